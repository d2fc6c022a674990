#include "spreadnet/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "spreadnet/rng.hpp"

namespace spreadnet::sim {

namespace {

// Fenwick tree over per-node hazards: O(log M) rate updates and O(log M)
// sampling of a node with probability proportional to its rate.
class HazardTree {
public:
    explicit HazardTree(int n)
        : n_(n), mask_(1), tree_(static_cast<std::size_t>(n) + 1, 0.0),
          value_(static_cast<std::size_t>(n), 0.0) {
        while (mask_ * 2 <= n_) mask_ *= 2;
    }

    double value(int i) const { return value_[static_cast<std::size_t>(i)]; }

    void add(int i, double delta) {
        value_[static_cast<std::size_t>(i)] += delta;
        for (int k = i + 1; k <= n_; k += k & -k) tree_[static_cast<std::size_t>(k)] += delta;
    }

    double total() const {
        double acc = 0.0;
        for (int k = n_; k > 0; k -= k & -k) acc += tree_[static_cast<std::size_t>(k)];
        return acc;
    }

    // Smallest index whose prefix sum exceeds u, for u in [0, total()).
    int sample(double u) const {
        int idx = 0;
        for (int step = mask_; step > 0; step >>= 1) {
            const int next = idx + step;
            if (next <= n_ && tree_[static_cast<std::size_t>(next)] < u) {
                u -= tree_[static_cast<std::size_t>(next)];
                idx = next;
            }
        }
        if (idx >= n_) idx = n_ - 1;
        // Rounding can land on a zero-rate slot; move to a live one.
        while (idx + 1 < n_ && value_[static_cast<std::size_t>(idx)] <= 0.0) ++idx;
        while (idx > 0 && value_[static_cast<std::size_t>(idx)] <= 0.0) --idx;
        return idx;
    }

private:
    int n_;
    int mask_;
    std::vector<double> tree_;
    std::vector<double> value_;
};

// Runs fn(r) for r in [0, count) on `threads` workers. Each index is handled
// exactly once; outputs go into per-index slots, so scheduling cannot change
// results.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = std::min(threads, count);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

std::vector<double> RunResult::fraction_at(std::span<const double> grid) const {
    std::vector<double> finite;
    finite.reserve(adoption_times.size());
    for (double t : adoption_times)
        if (std::isfinite(t)) finite.push_back(t);
    std::sort(finite.begin(), finite.end());

    std::vector<double> out(grid.size());
    const double m = static_cast<double>(adoption_times.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        while (k < finite.size() && finite[k] <= grid[i]) ++k;
        out[i] = static_cast<double>(k) / m;
    }
    return out;
}

RunResult simulate(const NetworkInstance& instance, double horizon, std::uint64_t seed) {
    if (!(horizon > 0.0)) throw std::invalid_argument("simulate: horizon must be positive");
    const Graph& g = instance.graph;
    const int m = g.node_count();
    const double p = instance.node_weight;
    const double w = instance.edge_weight;

    RunResult result;
    result.adoption_times.assign(static_cast<std::size_t>(m),
                                 std::numeric_limits<double>::infinity());
    Rng rng(seed);

    std::vector<char> adopted(static_cast<std::size_t>(m), 0);
    for (int j = 0; j < m; ++j) {
        if (rng.uniform01() < instance.i0) {
            adopted[static_cast<std::size_t>(j)] = 1;
            result.adoption_times[static_cast<std::size_t>(j)] = 0.0;
            result.initial_adopters.push_back(j);
        }
    }

    HazardTree hazards(m);
    int susceptible = 0;
    for (int j = 0; j < m; ++j) {
        if (adopted[static_cast<std::size_t>(j)]) continue;
        ++susceptible;
        double rate = p;
        for (int k : g.adjacency[static_cast<std::size_t>(j)])
            if (adopted[static_cast<std::size_t>(k)]) rate += w;
        if (rate > 0.0) hazards.add(j, rate);
    }

    double t = 0.0;
    while (susceptible > 0) {
        const double total = hazards.total();
        if (!(total > 0.0)) break; // frozen: p = 0 and no adopter pressure
        t += rng.exponential() / total;
        if (t > horizon) break;
        const int j = hazards.sample(rng.uniform01() * total);
        hazards.add(j, -hazards.value(j));
        adopted[static_cast<std::size_t>(j)] = 1;
        result.adoption_times[static_cast<std::size_t>(j)] = t;
        --susceptible;
        if (w != 0.0)
            for (int k : g.adjacency[static_cast<std::size_t>(j)])
                if (!adopted[static_cast<std::size_t>(k)]) hazards.add(k, w);
    }
    return result;
}

namespace {

struct ReplicateData {
    std::vector<double> fraction;                      // adoption fraction per grid point
    std::map<int, std::vector<double>> degree_susc;    // degree -> susceptible count per grid point
    std::map<int, int> degree_nodes;                   // degree -> stratum size
};

ReplicateData run_replicate(const gen::GraphFamily& family, const SpreadParams& params,
                            const EnsembleOptions& opt, std::span<const double> grid, int r) {
    const std::uint64_t graph_seed =
        derive_seed(opt.master_seed, opt.resample_graph ? 2 * static_cast<std::uint64_t>(r) : 0);
    const std::uint64_t sim_seed = derive_seed(opt.master_seed, 2 * static_cast<std::uint64_t>(r) + 1);
    const NetworkInstance instance = gen::build_instance(family, params, graph_seed);
    const RunResult run = simulate(instance, grid.back() > 0 ? grid.back() : opt.horizon, sim_seed);

    ReplicateData data;
    data.fraction = run.fraction_at(grid);
    if (opt.by_degree) {
        const int m = instance.graph.node_count();
        for (int j = 0; j < m; ++j) {
            const int d = instance.graph.degree(j);
            auto [it, fresh] = data.degree_susc.try_emplace(d);
            if (fresh) it->second.assign(grid.size(), 0.0);
            ++data.degree_nodes[d];
            const double at = run.adoption_times[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (at > grid[i]) it->second[i] += 1.0;
        }
    }
    return data;
}

} // namespace

EnsembleResult ensemble(const gen::GraphFamily& family, const SpreadParams& params,
                        const EnsembleOptions& options) {
    params.validate();
    if (options.runs < 1) throw std::invalid_argument("ensemble: need at least one run");
    std::vector<double> grid = options.grid;
    if (grid.empty()) {
        if (!(options.horizon > 0.0)) throw std::invalid_argument("ensemble: horizon must be positive");
        grid = uniform_grid(options.horizon, options.grid_points);
    }

    const int runs = options.runs;
    std::vector<ReplicateData> reps(static_cast<std::size_t>(runs));
    parallel_for(runs, options.threads,
                 [&](int r) { reps[static_cast<std::size_t>(r)] = run_replicate(family, params, options, grid, r); });

    EnsembleResult result;
    result.grid.times = grid;
    result.grid.values.assign(grid.size(), 0.0);
    result.grid.stderrs.assign(grid.size(), 0.0);
    // Reduction in fixed replicate order, independent of scheduling.
    for (const auto& rep : reps)
        for (std::size_t i = 0; i < grid.size(); ++i) result.grid.values[i] += rep.fraction[i];
    for (auto& v : result.grid.values) v /= runs;
    if (runs > 1) {
        for (const auto& rep : reps)
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double dev = rep.fraction[i] - result.grid.values[i];
                result.grid.stderrs[i] += dev * dev;
            }
        for (auto& s : result.grid.stderrs) s = std::sqrt(s / (runs - 1)) / std::sqrt(static_cast<double>(runs));
    }

    if (options.by_degree) {
        // Replicate-level stratum fractions; mean and stderr across the
        // replicates where the stratum is occupied.
        std::map<int, std::vector<std::vector<double>>> stratum_fracs;
        std::map<int, long long> stratum_nodes;
        for (const auto& rep : reps)
            for (const auto& [d, counts] : rep.degree_susc) {
                const int n_d = rep.degree_nodes.at(d);
                std::vector<double> frac(grid.size());
                for (std::size_t i = 0; i < grid.size(); ++i) frac[i] = counts[i] / n_d;
                stratum_fracs[d].push_back(std::move(frac));
                stratum_nodes[d] += n_d;
            }
        for (auto& [d, fracs] : stratum_fracs) {
            const auto n_rep = static_cast<double>(fracs.size());
            Trajectory traj;
            traj.times = grid;
            traj.values.assign(grid.size(), 0.0);
            traj.stderrs.assign(grid.size(), 0.0);
            for (const auto& f : fracs)
                for (std::size_t i = 0; i < grid.size(); ++i) traj.values[i] += f[i];
            for (auto& v : traj.values) v /= n_rep;
            if (fracs.size() > 1) {
                for (const auto& f : fracs)
                    for (std::size_t i = 0; i < grid.size(); ++i) {
                        const double dev = f[i] - traj.values[i];
                        traj.stderrs[i] += dev * dev;
                    }
                for (auto& s : traj.stderrs) s = std::sqrt(s / (n_rep - 1.0)) / std::sqrt(n_rep);
            }
            result.by_degree[d] = std::move(traj);
            result.by_degree_occupancy[d] = static_cast<double>(stratum_nodes[d]) / runs;
        }
    }
    return result;
}

std::map<int, Trajectory> conditional_susceptibility_by_degree(const gen::GraphFamily& family,
                                                               const SpreadParams& params,
                                                               const EnsembleOptions& options) {
    if (family.kind != gen::GraphFamily::Kind::er)
        throw std::invalid_argument("conditional_susceptibility_by_degree: requires the ER family");
    if (!options.resample_graph)
        throw std::invalid_argument("conditional_susceptibility_by_degree: requires resample_graph");
    EnsembleOptions opts = options;
    opts.by_degree = true;
    return ensemble(family, params, opts).by_degree;
}

} // namespace spreadnet::sim
