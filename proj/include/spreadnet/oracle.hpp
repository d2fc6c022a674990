#pragma once

#include <span>
#include <vector>

#include "spreadnet/graph.hpp"
#include "spreadnet/ode.hpp"

namespace spreadnet::oracle {

/// Master-equation solves keep the full probability vector over all 2^M node
/// configurations, so M is hard-capped. `cap` may be raised to 20 at most.
struct OracleOptions {
    ode::OdeOptions ode{1e-10, 1e-12};
    int cap = 16;
};

inline constexpr int kHardCap = 20;

/// Probability over all 2^M node-state configurations; bit j of the index is
/// X_j. Entries stay >= -1e-12 (integration slack) and sum to 1 within 1e-9.
using StateVector = std::vector<double>;

/// Full joint law at each sample time.
std::vector<StateVector> exact_distribution(const NetworkInstance& instance, std::span<const double> times,
                                            const OracleOptions& options = {});

/// Exact per-node survival probabilities [S_j](t): integrates the Kolmogorov
/// forward equations matrix-free (states distribute outflow to their
/// single-bit-flip successors) from the product-Bernoulli(i0) initial law.
std::vector<Trajectory> exact_marginals(const NetworkInstance& instance, std::span<const double> times,
                                        const OracleOptions& options = {});

/// Same, with per-node initial probabilities (deterministic initial
/// conditions are the {0,1} special case).
std::vector<Trajectory> exact_marginals(const NetworkInstance& instance, std::span<const double> times,
                                        std::span<const double> i0_per_node,
                                        const OracleOptions& options = {});

/// Joint probability that both j and k are still susceptible.
Trajectory exact_pair_survival(const NetworkInstance& instance, int j, int k,
                               std::span<const double> times, const OracleOptions& options = {});

/// Funnel decomposition of node j: lhs = [S_j] on the full network, rhs the
/// product of single-edge survival probabilities over ([S_j^{p_j}])^{d_j - 1},
/// where each factor is computed on the network with all of j's edges deleted
/// except one (respectively all). gap = lhs - rhs vanishes iff j lies on no
/// cycle; `bound` is the certified envelope for the gap, summing the tighter
/// of the two cycle-effect bounds over every cycle through j.
struct FunnelReport {
    int node = 0;
    std::vector<double> times;
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::vector<double> gap;
    std::vector<double> bound;
};

FunnelReport funnel_check(const NetworkInstance& instance, int j, std::span<const double> times,
                          const OracleOptions& options = {});

/// Max deviation of [S_{k,j}] between the original network and the network
/// with edge (j,k) deleted. Expected ~0 whenever the edge cannot influence
/// the pair's joint survival (j of degree 1).
double indifference_check(const NetworkInstance& instance, int j, int k, std::span<const double> times,
                          const OracleOptions& options = {});

} // namespace spreadnet::oracle
