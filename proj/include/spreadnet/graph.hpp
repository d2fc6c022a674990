#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spreadnet/errors.hpp"

namespace spreadnet {

/// Undirected simple graph in adjacency-list form. Node ids are 0..M-1 and
/// every adjacency list is sorted ascending, so iteration order (and hence
/// every seeded computation downstream) is deterministic.
struct Graph {
    std::vector<std::vector<int>> adjacency;

    int node_count() const { return static_cast<int>(adjacency.size()); }
    int degree(int j) const { return static_cast<int>(adjacency[static_cast<std::size_t>(j)].size()); }
    std::size_t edge_count() const;
    bool has_edge(int u, int v) const;

    /// Edges as (u, v) pairs with u < v, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;

    /// Builds from an edge list, rejecting self-loops, duplicates and
    /// out-of-range ids.
    static Graph from_edges(int node_count, const std::vector<std::pair<int, int>>& edges);

    /// Full-scan check of the simple/undirected invariants; throws on breakage.
    void validate() const;
};

/// Model rates: p (external adoption rate), q (total internal rate before
/// edge-weight scaling), i0 (initial adopter/infected probability).
struct SpreadParams {
    double p = 0.0;
    double q = 0.0;
    double i0 = 0.0;

    /// q > 0, p >= 0, 0 <= i0 < 1, and p > 0 or i0 > 0 (otherwise the process
    /// is frozen at zero).
    void validate() const;
};

/// A graph with its homogeneous weights: every node has rate `node_weight`
/// and every edge the single scalar `edge_weight`. Scalars rather than
/// per-edge arrays because the model's networks are uniform.
struct NetworkInstance {
    Graph graph;
    double node_weight = 0.0;
    double edge_weight = 0.0;
    double i0 = 0.0;
};

/// Time grid plus values (and optional standard errors, empty when absent).
struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> stderrs;
};

/// n uniform points on [0, t_end], starting at 0.
std::vector<double> uniform_grid(double t_end, int n);

/// ER weighting: node weight p, edge weight q/lambda.
NetworkInstance make_er_instance(Graph graph, const SpreadParams& params, double lambda);

/// d-regular weighting: edge weight q/d, so each node's incident weight sum
/// is exactly q. Throws shape_error if any node's degree differs from d.
NetworkInstance make_dreg_instance(Graph graph, const SpreadParams& params, int d);

} // namespace spreadnet
