#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "spreadnet/graph.hpp"
#include "spreadnet/graphgen.hpp"

namespace spreadnet::sim {

/// One realization of the spreading process. Nodes never adopting within the
/// horizon carry +infinity.
struct RunResult {
    std::vector<double> adoption_times;
    std::vector<int> initial_adopters;

    /// Adoption fraction #{adoption_time <= t} / M evaluated on a sorted grid.
    std::vector<double> fraction_at(std::span<const double> grid) const;
};

/// Statistically exact event-driven sampling of the continuous-time process:
/// initial adopters are i.i.d. Bernoulli(i0); afterwards a Gillespie loop
/// draws exponential waiting times from the total hazard and picks the
/// adopting node proportionally to its rate p + w * (# adopted neighbors).
/// Rates are piecewise constant between adoptions, so no discretization error.
RunResult simulate(const NetworkInstance& instance, double horizon, std::uint64_t seed);

struct EnsembleOptions {
    int runs = 100;
    double horizon = 0.0;
    int grid_points = 201;          // uniform points on [0, horizon] ...
    std::vector<double> grid;       // ... unless an explicit grid is given
    bool resample_graph = true;     // fresh graph per replicate (graph-ensemble average)
    bool by_degree = false;         // also track susceptibility stratified by degree
    std::uint64_t master_seed = 0;
    int threads = 0;                // 0 = hardware concurrency
};

/// Mean adoption fraction with standard errors, and (optionally) the mean
/// susceptibility of degree-d nodes. Replicate r draws its graph from seed
/// derive_seed(master, 2r) (or derive_seed(master, 0) when the graph is
/// fixed) and its event stream from derive_seed(master, 2r+1), so results are
/// bit-identical for a fixed master seed regardless of thread count.
struct EnsembleResult {
    Trajectory grid;
    std::map<int, Trajectory> by_degree;        // degree -> mean susceptibility of that stratum
    std::map<int, double> by_degree_occupancy;  // degree -> average # nodes per replicate
};

EnsembleResult ensemble(const gen::GraphFamily& family, const SpreadParams& params,
                        const EnsembleOptions& options);

/// Per-degree mean susceptibility on resampled ER ensembles (the empirical
/// conditional expectation of a node's survival given its degree). Strata
/// with zero occupancy are omitted.
std::map<int, Trajectory> conditional_susceptibility_by_degree(const gen::GraphFamily& family,
                                                               const SpreadParams& params,
                                                               const EnsembleOptions& options);

} // namespace spreadnet::sim
