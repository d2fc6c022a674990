#include "spreadnet/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spreadnet {

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency) twice += nbrs.size();
    return twice / 2;
}

bool Graph::has_edge(int u, int v) const {
    const auto& nbrs = adjacency[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < node_count(); ++u)
        for (int v : adjacency[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::from_edges(int node_count, const std::vector<std::pair<int, int>>& edges) {
    if (node_count < 0) throw std::invalid_argument("graph: negative node count");
    Graph g;
    g.adjacency.assign(static_cast<std::size_t>(node_count), {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= node_count || v >= node_count)
            throw std::invalid_argument("graph: edge endpoint out of range: (" + std::to_string(u) +
                                        "," + std::to_string(v) + ")");
        if (u == v) throw std::invalid_argument("graph: self-loop at node " + std::to_string(u));
        g.adjacency[static_cast<std::size_t>(u)].push_back(v);
        g.adjacency[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : g.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw std::invalid_argument("graph: duplicate edge");
    }
    return g;
}

void Graph::validate() const {
    const int m = node_count();
    for (int u = 0; u < m; ++u) {
        const auto& nbrs = adjacency[static_cast<std::size_t>(u)];
        if (!std::is_sorted(nbrs.begin(), nbrs.end()))
            throw std::invalid_argument("graph: adjacency list of node " + std::to_string(u) + " not sorted");
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw std::invalid_argument("graph: duplicate neighbor at node " + std::to_string(u));
        for (int v : nbrs) {
            if (v < 0 || v >= m) throw std::invalid_argument("graph: neighbor id out of range");
            if (v == u) throw std::invalid_argument("graph: self-loop at node " + std::to_string(u));
            if (!has_edge(v, u))
                throw std::invalid_argument("graph: asymmetric adjacency between " + std::to_string(u) +
                                            " and " + std::to_string(v));
        }
    }
}

void SpreadParams::validate() const {
    if (!(q > 0.0)) throw std::invalid_argument("params: q must be positive");
    if (!(p >= 0.0)) throw std::invalid_argument("params: p must be nonnegative");
    if (!(i0 >= 0.0 && i0 < 1.0)) throw std::invalid_argument("params: i0 must lie in [0,1)");
    if (!(p > 0.0 || i0 > 0.0))
        throw std::invalid_argument("params: need p > 0 or i0 > 0, otherwise the process is frozen");
}

std::vector<double> uniform_grid(double t_end, int n) {
    if (n < 1 || !(t_end >= 0.0)) throw std::invalid_argument("uniform_grid: bad arguments");
    std::vector<double> g(static_cast<std::size_t>(n));
    if (n == 1) {
        g[0] = 0.0;
        return g;
    }
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
    g[0] = 0.0;
    return g;
}

NetworkInstance make_er_instance(Graph graph, const SpreadParams& params, double lambda) {
    params.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("make_er_instance: lambda must be positive");
    return NetworkInstance{std::move(graph), params.p, params.q / lambda, params.i0};
}

NetworkInstance make_dreg_instance(Graph graph, const SpreadParams& params, int d) {
    params.validate();
    if (d < 2) throw std::invalid_argument("make_dreg_instance: d must be at least 2");
    for (int j = 0; j < graph.node_count(); ++j)
        if (graph.degree(j) != d)
            throw shape_error("make_dreg_instance: node " + std::to_string(j) + " has degree " +
                              std::to_string(graph.degree(j)) + ", expected " + std::to_string(d));
    return NetworkInstance{std::move(graph), params.p, params.q / static_cast<double>(d), params.i0};
}

} // namespace spreadnet
