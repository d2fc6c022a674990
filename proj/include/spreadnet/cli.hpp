#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spreadnet/graph.hpp"
#include "spreadnet/graphgen.hpp"

namespace spreadnet::cli {

enum class Model { bass, si, general };
enum class Mode { simulate, analytic, compare, sweep, analytic_family, cartesian, cycles };
enum class Metric { half_life, f_infinity, f_at_t };

/// One experiment, as described by a config file. Versioned key-value text
/// format: lines of "key value", '#' comments, mandatory "schema 1".
struct ExperimentConfig {
    std::string name = "experiment";
    Mode mode = Mode::compare;
    Model model = Model::general;
    gen::GraphFamily family;
    SpreadParams params;
    int runs = 100;
    double horizon = 100.0;
    int grid_points = 201;
    std::uint64_t seed = 1;
    bool resample = true;
    bool by_degree = false;

    // sweep mode
    std::string sweep_param = "lambda";
    std::vector<double> sweep_values;
    Metric metric = Metric::half_life;
    double t_eval = 0.0;
    bool overlay_giant = false;

    // analytic_family mode
    std::vector<int> d_values;
    bool overlay_compart = false;

    // cycles mode
    int len_min = 3;
    int len_max = 5;
    int samples = 2000;
    int condition_degree = 0; // ER only: resample until the probe node has this degree

    /// Model constraints: bass forces i0 = 0 and p > 0; si forces p = 0 and
    /// i0 in (0,1). Throws config_error with the offending field.
    void validate() const;
};

/// Parses and validates; diagnostics carry "<origin>:<line>: message".
ExperimentConfig parse_config(std::istream& in, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// Outcome of a command: files written plus the headline deviation metric.
struct CommandResult {
    std::vector<std::string> files;
    double sup_deviation = 0.0;
    double max_stderr = 0.0;
    double tolerance = 0.0;
    bool tolerance_applies = false;
    bool pass = true;
    double runtime_seconds = 0.0;
};

struct OutputOptions {
    std::string out_dir = ".";
    bool write_svg = true;
    std::optional<double> tolerance; // compare: override of max(0.015, 4*stderr)
};

CommandResult run_simulate(const ExperimentConfig& cfg, const OutputOptions& out);
CommandResult run_analytic(const ExperimentConfig& cfg, const OutputOptions& out);
CommandResult run_compare(const ExperimentConfig& cfg, const OutputOptions& out);
CommandResult run_sweep(const ExperimentConfig& cfg, const OutputOptions& out);
CommandResult run_analytic_family(const ExperimentConfig& cfg, const OutputOptions& out);
CommandResult run_cartesian(const ExperimentConfig& cfg, const OutputOptions& out);
CommandResult run_cycles(const ExperimentConfig& cfg, const OutputOptions& out);

/// Dispatches on cfg.mode.
CommandResult run_experiment(const ExperimentConfig& cfg, const OutputOptions& out);

/// Figure presets (fig1a..fig9d), identical to the files shipped under
/// configs/. Unknown ids throw config_error.
const std::map<std::string, std::string>& figure_presets();
ExperimentConfig figure_config(const std::string& id);
CommandResult run_figure(const std::string& id, const OutputOptions& out,
                         std::optional<int> runs_override = {}, std::optional<std::uint64_t> seed_override = {});

} // namespace spreadnet::cli
