#include "spreadnet/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spreadnet/rng.hpp"

namespace spreadnet::gen {

Graph gen_er(int nodes, double lambda, std::uint64_t seed) {
    if (nodes < 1) throw std::invalid_argument("gen_er: need at least one node");
    if (!(lambda >= 0.0)) throw std::invalid_argument("gen_er: lambda must be nonnegative");
    if (lambda > static_cast<double>(nodes))
        throw std::invalid_argument("gen_er: lambda > M would give edge probability above 1");

    const double prob = lambda / static_cast<double>(nodes);
    std::vector<std::pair<int, int>> edges;
    if (prob >= 1.0) {
        for (int u = 0; u < nodes; ++u)
            for (int v = u + 1; v < nodes; ++v) edges.emplace_back(u, v);
        return Graph::from_edges(nodes, edges);
    }
    if (prob > 0.0) {
        edges.reserve(static_cast<std::size_t>(lambda * nodes / 2.0 + 16.0));
        Rng rng(seed);
        const double log1mp = std::log1p(-prob);
        // Walk the pair sequence (0,1),(0,2),...,(1,2),... skipping a
        // Geometric(prob) number of pairs between inclusions.
        int u = 0, v = 0; // last consumed column in row u; v == u means none yet
        while (u < nodes - 1) {
            const double r = rng.uniform01();
            long long k = 1 + static_cast<long long>(std::floor(std::log1p(-r) / log1mp));
            while (u < nodes - 1) {
                const long long avail = static_cast<long long>(nodes - 1) - v;
                if (k <= avail) {
                    v += static_cast<int>(k);
                    edges.emplace_back(u, v);
                    break;
                }
                k -= avail;
                ++u;
                v = u;
            }
        }
    }
    return Graph::from_edges(nodes, edges);
}

Graph gen_dregular(int nodes, int d, std::uint64_t seed) {
    if (nodes < 1) throw std::invalid_argument("gen_dregular: need at least one node");
    if (d < 2) throw std::invalid_argument("gen_dregular: d must be at least 2");
    if (d >= nodes) throw std::invalid_argument("gen_dregular: d must be smaller than M");
    if ((static_cast<long long>(nodes) * d) % 2 != 0)
        throw parity_error("gen_dregular: d*M must be even");

    const std::size_t stubs = static_cast<std::size_t>(nodes) * static_cast<std::size_t>(d);
    std::vector<int> stub(stubs);
    for (std::size_t i = 0; i < stubs; ++i) stub[i] = static_cast<int>(i / static_cast<std::size_t>(d));

    Rng rng(seed);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
    // Uniform over simple d-regular graphs: each simple outcome corresponds to
    // exactly (d!)^M pairings, so rejection keeps the distribution uniform.
    constexpr long long kMaxAttempts = 1000000;
    for (long long attempt = 0; attempt < kMaxAttempts; ++attempt) {
        for (std::size_t i = stubs - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
            std::swap(stub[i], stub[j]);
        }
        for (auto& nbrs : adj) nbrs.clear();
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs && ok; i += 2) {
            const int a = stub[i], b = stub[i + 1];
            if (a == b) {
                ok = false;
                break;
            }
            auto& na = adj[static_cast<std::size_t>(a)];
            if (std::find(na.begin(), na.end(), b) != na.end()) {
                ok = false;
                break;
            }
            na.push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        if (!ok) continue;
        Graph g;
        g.adjacency = std::move(adj);
        for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
        return g;
    }
    throw std::runtime_error("gen_dregular: rejection sampling did not produce a simple graph "
                             "(d too large for the restart scheme)");
}

Graph gen_cartesian_torus(int dim, int side) {
    if (dim < 1) throw std::invalid_argument("gen_cartesian_torus: dimension must be at least 1");
    if (side < 3) throw std::invalid_argument("gen_cartesian_torus: side must be at least 3");
    long long count = 1;
    for (int k = 0; k < dim; ++k) {
        count *= side;
        if (count > 20000000) throw std::invalid_argument("gen_cartesian_torus: too many nodes");
    }
    const auto nodes = static_cast<int>(count);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(dim));
    // Node id = mixed-radix coordinates, dimension k having stride side^k.
    for (int u = 0; u < nodes; ++u) {
        long long stride = 1;
        for (int k = 0; k < dim; ++k) {
            const int coord = static_cast<int>((u / stride) % side);
            const int up = coord + 1 == side ? 0 : coord + 1;
            const int v = static_cast<int>(u + (static_cast<long long>(up) - coord) * stride);
            edges.emplace_back(std::min(u, v), std::max(u, v));
            stride *= side;
        }
    }
    return Graph::from_edges(nodes, edges);
}

Graph gen_isolated(int nodes) {
    if (nodes < 1) throw std::invalid_argument("gen_isolated: need at least one node");
    return Graph::from_edges(nodes, {});
}

Graph gen_cycle(int nodes) {
    if (nodes < 3) throw std::invalid_argument("gen_cycle: need at least three nodes");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(nodes));
    for (int u = 0; u + 1 < nodes; ++u) edges.emplace_back(u, u + 1);
    edges.emplace_back(0, nodes - 1);
    return Graph::from_edges(nodes, edges);
}

Graph gen_complete(int nodes) {
    if (nodes < 1) throw std::invalid_argument("gen_complete: need at least one node");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < nodes; ++u)
        for (int v = u + 1; v < nodes; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(nodes, edges);
}

Graph gen_path(int nodes) {
    if (nodes < 1) throw std::invalid_argument("gen_path: need at least one node");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u + 1 < nodes; ++u) edges.emplace_back(u, u + 1);
    return Graph::from_edges(nodes, edges);
}

namespace {

// Extends simple paths root -> ... -> current; a path closing back at root
// with length >= 3 is a cycle. Counting only closures where the first hop is
// smaller than the last hop picks one of the two orientations of each cycle.
void cycle_dfs(const Graph& g, int root, int current, int first_hop, int depth, int max_len,
               std::vector<char>& on_path, std::map<int, long long>& counts) {
    for (int next : g.adjacency[static_cast<std::size_t>(current)]) {
        if (next == root) {
            if (depth >= 3 && first_hop < current) ++counts[depth];
            continue;
        }
        if (on_path[static_cast<std::size_t>(next)] || depth + 1 > max_len) continue;
        on_path[static_cast<std::size_t>(next)] = 1;
        cycle_dfs(g, root, next, first_hop, depth + 1, max_len, on_path, counts);
        on_path[static_cast<std::size_t>(next)] = 0;
    }
}

} // namespace

CycleCensus count_cycles_through(const Graph& graph, int node, int max_len) {
    const int m = graph.node_count();
    if (node < 0 || node >= m) throw std::invalid_argument("count_cycles_through: node out of range");
    if (max_len < 3) throw std::invalid_argument("count_cycles_through: max_len must be at least 3");
    if (max_len > m) throw std::invalid_argument("count_cycles_through: max_len exceeds node count");

    CycleCensus census;
    census.node = node;
    std::vector<char> on_path(static_cast<std::size_t>(m), 0);
    on_path[static_cast<std::size_t>(node)] = 1;
    for (int first : graph.adjacency[static_cast<std::size_t>(node)]) {
        on_path[static_cast<std::size_t>(first)] = 1;
        cycle_dfs(graph, node, first, first, 2, max_len, on_path, census.counts);
        on_path[static_cast<std::size_t>(first)] = 0;
    }
    return census;
}

double expected_cycles_er(int d, double lambda, int len, int nodes) {
    if (d < 2) throw std::invalid_argument("expected_cycles_er: d must be at least 2");
    if (!(lambda > 0.0)) throw std::invalid_argument("expected_cycles_er: lambda must be positive");
    if (len < 3) throw std::invalid_argument("expected_cycles_er: cycle length must be at least 3");
    if (nodes < len) throw std::invalid_argument("expected_cycles_er: need at least L nodes");
    const double kappa = 0.5 * d * (d - 1) * std::pow(lambda, len - 2);
    return kappa / static_cast<double>(nodes);
}

double expected_cycles_dreg(int d, int len, int nodes) {
    if (d < 3) throw std::invalid_argument("expected_cycles_dreg: d must be at least 3");
    if (len < 3) throw std::invalid_argument("expected_cycles_dreg: cycle length must be at least 3");
    if (nodes < len) throw std::invalid_argument("expected_cycles_dreg: need at least L nodes");
    return 0.5 * std::pow(static_cast<double>(d - 1), len) / static_cast<double>(nodes);
}

double degree_pmf_binomial(int d, int nodes, double lambda) {
    if (nodes < 1) throw std::invalid_argument("degree_pmf_binomial: need at least one node");
    if (!(lambda >= 0.0) || lambda > static_cast<double>(nodes))
        throw std::invalid_argument("degree_pmf_binomial: lambda out of range");
    if (d < 0 || d > nodes - 1) return 0.0;
    const double prob = lambda / static_cast<double>(nodes);
    if (prob == 0.0) return d == 0 ? 1.0 : 0.0;
    if (prob == 1.0) return d == nodes - 1 ? 1.0 : 0.0;
    double log_pmf = 0.0;
    for (int k = 1; k <= d; ++k)
        log_pmf += std::log(static_cast<double>(nodes - d + k - 1) / 1.0) - std::log(static_cast<double>(k));
    log_pmf += d * std::log(prob) + (nodes - 1 - d) * std::log1p(-prob);
    return std::exp(log_pmf);
}

double degree_pmf_poisson(int d, double lambda) {
    if (d < 0) throw std::invalid_argument("degree_pmf_poisson: d must be nonnegative");
    if (!(lambda >= 0.0)) throw std::invalid_argument("degree_pmf_poisson: lambda must be nonnegative");
    if (lambda == 0.0) return d == 0 ? 1.0 : 0.0;
    double log_pmf = -lambda + d * std::log(lambda);
    for (int k = 2; k <= d; ++k) log_pmf -= std::log(static_cast<double>(k));
    return std::exp(log_pmf);
}

GraphFamily GraphFamily::er(int nodes, double lambda) {
    GraphFamily f;
    f.kind = Kind::er;
    f.nodes = nodes;
    f.lambda = lambda;
    return f;
}

GraphFamily GraphFamily::dreg(int nodes, int degree) {
    GraphFamily f;
    f.kind = Kind::dreg;
    f.nodes = nodes;
    f.degree = degree;
    return f;
}

GraphFamily GraphFamily::torus(int dim, int side) {
    GraphFamily f;
    f.kind = Kind::torus;
    f.dim = dim;
    f.side = side;
    long long count = 1;
    for (int k = 0; k < dim; ++k) count *= side;
    f.nodes = static_cast<int>(count);
    return f;
}

GraphFamily GraphFamily::isolated(int nodes) {
    GraphFamily f;
    f.kind = Kind::isolated;
    f.nodes = nodes;
    return f;
}

GraphFamily GraphFamily::cycle(int nodes) {
    GraphFamily f;
    f.kind = Kind::cycle;
    f.nodes = nodes;
    return f;
}

GraphFamily GraphFamily::complete(int nodes) {
    GraphFamily f;
    f.kind = Kind::complete;
    f.nodes = nodes;
    return f;
}

int GraphFamily::node_count() const { return nodes; }

std::string GraphFamily::describe() const {
    switch (kind) {
    case Kind::er: return "er(M=" + std::to_string(nodes) + ",lambda=" + std::to_string(lambda) + ")";
    case Kind::dreg: return "dreg(M=" + std::to_string(nodes) + ",d=" + std::to_string(degree) + ")";
    case Kind::torus: return "torus(D=" + std::to_string(dim) + ",side=" + std::to_string(side) + ")";
    case Kind::isolated: return "isolated(M=" + std::to_string(nodes) + ")";
    case Kind::cycle: return "cycle(M=" + std::to_string(nodes) + ")";
    case Kind::complete: return "complete(M=" + std::to_string(nodes) + ")";
    }
    return "unknown";
}

Graph build_graph(const GraphFamily& family, std::uint64_t seed) {
    switch (family.kind) {
    case GraphFamily::Kind::er: return gen_er(family.nodes, family.lambda, seed);
    case GraphFamily::Kind::dreg: return gen_dregular(family.nodes, family.degree, seed);
    case GraphFamily::Kind::torus: return gen_cartesian_torus(family.dim, family.side);
    case GraphFamily::Kind::isolated: return gen_isolated(family.nodes);
    case GraphFamily::Kind::cycle: return gen_cycle(family.nodes);
    case GraphFamily::Kind::complete: return gen_complete(family.nodes);
    }
    throw std::invalid_argument("build_graph: unknown family");
}

NetworkInstance build_instance(const GraphFamily& family, const SpreadParams& params, std::uint64_t seed) {
    params.validate();
    Graph g = build_graph(family, seed);
    switch (family.kind) {
    case GraphFamily::Kind::er: return make_er_instance(std::move(g), params, family.lambda);
    case GraphFamily::Kind::dreg: return make_dreg_instance(std::move(g), params, family.degree);
    case GraphFamily::Kind::torus: return make_dreg_instance(std::move(g), params, 2 * family.dim);
    case GraphFamily::Kind::isolated: return NetworkInstance{std::move(g), params.p, 0.0, params.i0};
    case GraphFamily::Kind::cycle: return make_dreg_instance(std::move(g), params, 2);
    case GraphFamily::Kind::complete: return make_dreg_instance(std::move(g), params, family.nodes - 1);
    }
    throw std::invalid_argument("build_instance: unknown family");
}

} // namespace spreadnet::gen
