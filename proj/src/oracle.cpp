#include "spreadnet/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "spreadnet/graphgen.hpp"

namespace spreadnet::oracle {

namespace {

void check_capacity(const NetworkInstance& instance, const OracleOptions& options) {
    const int m = instance.graph.node_count();
    const int cap = std::min(options.cap, kHardCap);
    if (m > cap)
        throw capacity_error("oracle: M = " + std::to_string(m) + " exceeds the state-space cap of " +
                             std::to_string(cap));
    if (m < 1) throw std::invalid_argument("oracle: empty network");
}

void check_times(std::span<const double> times) {
    if (times.empty()) throw std::invalid_argument("oracle: empty time grid");
    if (times.front() < 0.0) throw std::invalid_argument("oracle: negative time");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw std::invalid_argument("oracle: grid not strictly increasing");
}

// Integrates the forward equations and hands the full distribution to `sink`
// at every sample time.
void integrate_master(const NetworkInstance& instance, std::span<const double> times,
                      std::span<const double> i0, const OracleOptions& options,
                      const std::function<void(std::size_t, const std::vector<double>&)>& sink) {
    const int m = instance.graph.node_count();
    const auto n_states = std::size_t{1} << m;
    const double p = instance.node_weight;
    const double w = instance.edge_weight;

    std::vector<std::uint32_t> nbr_mask(static_cast<std::size_t>(m), 0);
    for (int j = 0; j < m; ++j)
        for (int k : instance.graph.adjacency[static_cast<std::size_t>(j)])
            nbr_mask[static_cast<std::size_t>(j)] |= std::uint32_t{1} << k;

    // Product-Bernoulli initial law.
    std::vector<double> prob(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        double val = 1.0;
        for (int j = 0; j < m; ++j)
            val *= (s >> j & 1) ? i0[static_cast<std::size_t>(j)] : 1.0 - i0[static_cast<std::size_t>(j)];
        prob[s] = val;
    }

    auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& dydt) {
        std::fill(dydt.begin(), dydt.end(), 0.0);
        for (std::size_t s = 0; s < n_states; ++s) {
            const double ps = y[s];
            if (ps == 0.0) continue;
            double outflow = 0.0;
            for (int j = 0; j < m; ++j) {
                if (s >> j & 1) continue;
                const double rate =
                    p + w * std::popcount(static_cast<std::uint32_t>(s) & nbr_mask[static_cast<std::size_t>(j)]);
                if (rate == 0.0) continue;
                outflow += rate;
                dydt[s | (std::size_t{1} << j)] += rate * ps;
            }
            dydt[s] -= outflow * ps;
        }
    };

    ode::integrate_at(rhs, std::move(prob), 0.0, times, options.ode,
                      [&](std::size_t i, double, const std::vector<double>& y) { sink(i, y); });
}

std::vector<double> uniform_i0(const NetworkInstance& instance) {
    return std::vector<double>(static_cast<std::size_t>(instance.graph.node_count()), instance.i0);
}

// Survival marginal of a single node on each sample.
std::vector<double> marginal_of(const NetworkInstance& instance, int node, std::span<const double> times,
                                std::span<const double> i0, const OracleOptions& options) {
    std::vector<double> out(times.size(), 0.0);
    const auto bit = std::size_t{1} << node;
    integrate_master(instance, times, i0, options, [&](std::size_t i, const std::vector<double>& y) {
        double acc = 0.0;
        for (std::size_t s = 0; s < y.size(); ++s)
            if (!(s & bit)) acc += y[s];
        out[i] = acc;
    });
    return out;
}

Graph delete_edges_of(const Graph& g, int j, int keep_neighbor) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : g.edges()) {
        if ((u == j && v != keep_neighbor) || (v == j && u != keep_neighbor)) continue;
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(g.node_count(), edges);
}

} // namespace

std::vector<StateVector> exact_distribution(const NetworkInstance& instance, std::span<const double> times,
                                            const OracleOptions& options) {
    check_capacity(instance, options);
    check_times(times);
    std::vector<StateVector> out(times.size());
    const auto i0 = uniform_i0(instance);
    integrate_master(instance, times, i0, options,
                     [&](std::size_t i, const std::vector<double>& y) { out[i] = y; });
    return out;
}

std::vector<Trajectory> exact_marginals(const NetworkInstance& instance, std::span<const double> times,
                                        const OracleOptions& options) {
    const auto i0 = uniform_i0(instance);
    return exact_marginals(instance, times, i0, options);
}

std::vector<Trajectory> exact_marginals(const NetworkInstance& instance, std::span<const double> times,
                                        std::span<const double> i0_per_node, const OracleOptions& options) {
    check_capacity(instance, options);
    check_times(times);
    const int m = instance.graph.node_count();
    if (static_cast<int>(i0_per_node.size()) != m)
        throw std::invalid_argument("oracle: i0 vector size must match node count");
    for (double v : i0_per_node)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("oracle: i0 entries must lie in [0,1]");

    std::vector<Trajectory> out(static_cast<std::size_t>(m));
    for (auto& traj : out) {
        traj.times.assign(times.begin(), times.end());
        traj.values.assign(times.size(), 0.0);
    }
    integrate_master(instance, times, i0_per_node, options, [&](std::size_t i, const std::vector<double>& y) {
        for (int j = 0; j < m; ++j) {
            const auto bit = std::size_t{1} << j;
            double acc = 0.0;
            for (std::size_t s = 0; s < y.size(); ++s)
                if (!(s & bit)) acc += y[s];
            out[static_cast<std::size_t>(j)].values[i] = acc;
        }
    });
    return out;
}

Trajectory exact_pair_survival(const NetworkInstance& instance, int j, int k, std::span<const double> times,
                               const OracleOptions& options) {
    check_capacity(instance, options);
    check_times(times);
    const int m = instance.graph.node_count();
    if (j < 0 || j >= m || k < 0 || k >= m || j == k)
        throw std::invalid_argument("exact_pair_survival: bad node pair");

    Trajectory out;
    out.times.assign(times.begin(), times.end());
    out.values.assign(times.size(), 0.0);
    const auto mask = (std::size_t{1} << j) | (std::size_t{1} << k);
    const auto i0 = uniform_i0(instance);
    integrate_master(instance, times, i0, options, [&](std::size_t i, const std::vector<double>& y) {
        double acc = 0.0;
        for (std::size_t s = 0; s < y.size(); ++s)
            if (!(s & mask)) acc += y[s];
        out.values[i] = acc;
    });
    return out;
}

FunnelReport funnel_check(const NetworkInstance& instance, int j, std::span<const double> times,
                          const OracleOptions& options) {
    check_capacity(instance, options);
    check_times(times);
    const Graph& g = instance.graph;
    const int m = g.node_count();
    if (j < 0 || j >= m) throw std::invalid_argument("funnel_check: node out of range");
    const auto& neighbors = g.adjacency[static_cast<std::size_t>(j)];
    const int deg = static_cast<int>(neighbors.size());
    const auto i0 = uniform_i0(instance);

    FunnelReport report;
    report.node = j;
    report.times.assign(times.begin(), times.end());

    report.lhs = marginal_of(instance, j, times, i0, options);

    // [S_j^{p_j}]: all of j's edges deleted.
    NetworkInstance bare{delete_edges_of(g, j, -1), instance.node_weight, instance.edge_weight, instance.i0};
    const auto denom = marginal_of(bare, j, times, i0, options);

    std::vector<double> rhs(times.size(), 1.0);
    if (deg == 0) {
        rhs = denom;
    } else {
        for (int nbr : neighbors) {
            NetworkInstance one{delete_edges_of(g, j, nbr), instance.node_weight, instance.edge_weight,
                                instance.i0};
            const auto factor = marginal_of(one, j, times, i0, options);
            for (std::size_t i = 0; i < times.size(); ++i) rhs[i] *= factor[i];
        }
        for (std::size_t i = 0; i < times.size(); ++i)
            rhs[i] /= std::pow(denom[i], static_cast<double>(deg - 1));
    }

    report.rhs = rhs;
    report.gap.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) report.gap[i] = report.lhs[i] - rhs[i];

    // Certified envelope: (1-i0) e^{-pt} * sum over cycles through j of the
    // tighter of the short-time and all-time cycle-effect bounds.
    gen::CycleCensus census;
    if (m >= 3) census = gen::count_cycles_through(g, j, m);
    const double p = instance.node_weight;
    const double w = instance.edge_weight;
    report.bound.assign(times.size(), 0.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        double acc = 0.0;
        for (const auto& [len, count] : census.counts) {
            const double half = std::floor((len + 1) / 2.0);
            double env = 0.0;
            if (w > 0.0) {
                env = std::pow(w / (p + w), half);
                if (t == 0.0) {
                    env = 0.0;
                } else if (t < half / w) {
                    const double temporal =
                        std::exp(-(p + w) * t) * std::pow(std::exp(1.0) * w * t / half, half);
                    env = std::min(env, temporal);
                }
            }
            acc += 2.0 * (1.0 - instance.i0) * env * static_cast<double>(count);
        }
        report.bound[i] = (1.0 - instance.i0) * std::exp(-p * t) * acc;
    }
    return report;
}

double indifference_check(const NetworkInstance& instance, int j, int k, std::span<const double> times,
                          const OracleOptions& options) {
    check_capacity(instance, options);
    check_times(times);
    if (!instance.graph.has_edge(j, k))
        throw std::invalid_argument("indifference_check: edge (j,k) does not exist");

    const auto original = exact_pair_survival(instance, j, k, times, options);
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : instance.graph.edges())
        if (!((u == j && v == k) || (u == k && v == j))) edges.emplace_back(u, v);
    NetworkInstance cut{Graph::from_edges(instance.graph.node_count(), edges), instance.node_weight,
                        instance.edge_weight, instance.i0};
    const auto deleted = exact_pair_survival(cut, j, k, times, options);

    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
        worst = std::max(worst, std::abs(original.values[i] - deleted.values[i]));
    return worst;
}

} // namespace spreadnet::oracle
