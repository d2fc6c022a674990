#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "spreadnet/graph.hpp"

namespace spreadnet::gen {

/// Erdos-Renyi G(M, lambda/M): each of the C(M,2) unordered pairs is included
/// independently with probability lambda/M. Sampled by geometric skipping over
/// the pair sequence, expected O(lambda*M) work. Deterministic per seed.
Graph gen_er(int nodes, double lambda, std::uint64_t seed);

/// Uniform random simple d-regular graph via the pairing (configuration)
/// model with full restart on any self-loop or multi-edge. Requires d < M and
/// d*M even (parity_error otherwise).
Graph gen_dregular(int nodes, int d, std::uint64_t seed);

/// D-dimensional Cartesian torus with side^D nodes, each of degree exactly 2D
/// (periodic boundary; side >= 3 avoids duplicate wraparound edges).
Graph gen_cartesian_torus(int dim, int side);

Graph gen_isolated(int nodes);
Graph gen_cycle(int nodes);    // nodes >= 3
Graph gen_complete(int nodes);
Graph gen_path(int nodes);

/// Exact counts of distinct simple cycles through one node, per length.
/// Each cycle is counted once (not per orientation or rotation).
struct CycleCensus {
    int node = 0;
    std::map<int, long long> counts; // length L >= 3 -> count
};

/// Depth-first enumeration from `node`; exponential worst case, intended for
/// small graphs or small max_len. Requires 3 <= max_len <= M.
CycleCensus count_cycles_through(const Graph& graph, int node, int max_len);

/// Asymptotic expected number of length-L cycles through a degree-d node of
/// G(M, lambda/M): d(d-1)/2 * lambda^{L-2} / M.
double expected_cycles_er(int d, double lambda, int len, int nodes);

/// Asymptotic expectation for random d-regular graphs: (d-1)^L / (2M).
double expected_cycles_dreg(int d, int len, int nodes);

/// Degree distribution of G(M, lambda/M): exact binomial, and its
/// M -> infinity Poisson limit lambda^d e^{-lambda} / d!.
double degree_pmf_binomial(int d, int nodes, double lambda);
double degree_pmf_poisson(int d, double lambda);

/// Parametric description of the graph families ensembles run on.
struct GraphFamily {
    enum class Kind { er, dreg, torus, isolated, cycle, complete };

    Kind kind = Kind::isolated;
    int nodes = 0;     // er, dreg, isolated, cycle, complete
    double lambda = 0; // er
    int degree = 0;    // dreg
    int dim = 0;       // torus
    int side = 0;      // torus

    static GraphFamily er(int nodes, double lambda);
    static GraphFamily dreg(int nodes, int degree);
    static GraphFamily torus(int dim, int side);
    static GraphFamily isolated(int nodes);
    static GraphFamily cycle(int nodes);
    static GraphFamily complete(int nodes);

    int node_count() const;
    std::string describe() const;
};

/// Realizes the family (deterministic families ignore the seed).
Graph build_graph(const GraphFamily& family, std::uint64_t seed);

/// Applies the family's edge-weight rule: q/lambda for ER, q/d for d-regular
/// (cycle d=2, torus d=2D, complete d=M-1), edge weight 0 for isolated nodes.
NetworkInstance build_instance(const GraphFamily& family, const SpreadParams& params, std::uint64_t seed);

} // namespace spreadnet::gen
