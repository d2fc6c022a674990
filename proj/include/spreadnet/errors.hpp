#pragma once

#include <stdexcept>
#include <string>

namespace spreadnet {

// Graph has the wrong shape for the requested construction (e.g. a node whose
// degree does not match the required d).
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// d*M odd in d-regular generation.
struct parity_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Problem size exceeds a hard resource cap (master-equation state space).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A root search that never brackets its target (half-life of a curve that
// plateaus below 1/2).
struct no_crossing_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Config-file validation failure; message carries file:line context.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace spreadnet
