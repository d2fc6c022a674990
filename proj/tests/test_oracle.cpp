#include <doctest.h>

#include <cmath>

#include "spreadnet/graphgen.hpp"
#include "spreadnet/oracle.hpp"
#include "spreadnet/rng.hpp"
#include "support/free_trees.hpp"

using namespace spreadnet;
using oracle::OracleOptions;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("single node survival is (1-i0) e^{-pt}") {
    const NetworkInstance node{gen::gen_isolated(1), 0.7, 0.0, 0.2};
    const std::vector<double> times{0.0, 0.5, 1.0, 2.0};
    const auto marginals = oracle::exact_marginals(node, times);
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(marginals[0].values[i] == doctest::Approx(0.8 * std::exp(-0.7 * times[i])).epsilon(1e-8));
}

TEST_CASE("frozen network stays fully susceptible") {
    const NetworkInstance frozen{gen::gen_cycle(4), 0.0, 0.9, 0.0};
    const std::vector<double> times{0.0, 1.0, 5.0};
    const auto marginals = oracle::exact_marginals(frozen, times);
    for (const auto& traj : marginals)
        for (double v : traj.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dyad closed forms") {
    const NetworkInstance dyad{gen::gen_path(2), 0.5, 1.0, 0.0};
    const std::vector<double> times{0.0, 0.5, 1.0, 2.0};
    const auto marginals = oracle::exact_marginals(dyad, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = 2.0 * std::exp(-times[i]) - std::exp(-1.5 * times[i]);
        CHECK(std::abs(marginals[0].values[i] - expected) <= 1e-6);
        CHECK(std::abs(marginals[1].values[i] - expected) <= 1e-6);
    }
    // Both-susceptible probability decays at rate 2p, independent of q.
    const auto pair = oracle::exact_pair_survival(dyad, 0, 1, times);
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(std::abs(pair.values[i] - std::exp(-2.0 * 0.5 * times[i])) <= 1e-8);

    const NetworkInstance seeded{gen::gen_path(2), 0.3, 0.8, 0.2};
    const auto seeded_pair = oracle::exact_pair_survival(seeded, 0, 1, times);
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(std::abs(seeded_pair.values[i] - 0.8 * 0.8 * std::exp(-0.6 * times[i])) <= 1e-8);
}

TEST_CASE("independent isolated pair") {
    const NetworkInstance pair_net{gen::gen_isolated(2), 0.4, 0.0, 0.1};
    const std::vector<double> times{0.0, 1.0, 3.0};
    const auto pair = oracle::exact_pair_survival(pair_net, 0, 1, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double single = 0.9 * std::exp(-0.4 * times[i]);
        CHECK(std::abs(pair.values[i] - single * single) <= 1e-9);
    }
}

TEST_CASE("state vector conserves probability") {
    const auto g = gen::gen_er(7, 2.0, 13);
    const NetworkInstance instance{g, 0.3, 0.7, 0.15};
    const auto grid = uniform_grid(4.0, 21);
    const auto law = oracle::exact_distribution(instance, grid);
    REQUIRE(law.size() == grid.size());
    for (const auto& state : law) {
        REQUIRE(state.size() == std::size_t{1} << 7);
        double total = 0.0;
        for (double p : state) {
            CHECK(p >= -1e-12);
            total += p;
        }
        CHECK(std::abs(total - 1.0) <= 1e-9);
    }
    // The all-susceptible state at t=0 has probability (1-i0)^M.
    CHECK(law.front()[0] == doctest::Approx(std::pow(0.85, 7)).epsilon(1e-12));
}

TEST_CASE("marginals are monotone nonincreasing") {
    const auto g = gen::gen_er(8, 2.5, 10);
    const NetworkInstance instance{g, 0.2, 0.6, 0.1};
    const auto grid = uniform_grid(3.0, 31);
    const auto marginals = oracle::exact_marginals(instance, grid);
    for (const auto& traj : marginals)
        for (std::size_t i = 1; i < traj.values.size(); ++i)
            CHECK(traj.values[i] <= traj.values[i - 1] + 1e-9);
}

TEST_CASE("finite-difference residual of the survival master equation") {
    // d[S_j]/dt = -(p + sum_k q_kj) [S_j] + sum_k q_kj [S_{k,j}]
    OracleOptions tight;
    tight.ode = {1e-12, 1e-14};
    const double h = 2e-4;
    for (std::uint64_t seed : {21ull, 22ull}) {
        const Graph g = gen::gen_er(6, 2.2, seed);
        const NetworkInstance instance{g, 0.4, 0.9, 0.1};
        for (double t : {0.4, 1.1}) {
            const std::vector<double> stencil{t - h, t, t + h};
            const auto marginals = oracle::exact_marginals(instance, stencil, tight);
            for (int j = 0; j < g.node_count(); ++j) {
                const auto& s = marginals[static_cast<std::size_t>(j)].values;
                const double derivative = (s[2] - s[0]) / (2.0 * h);
                double rhs = -(instance.node_weight +
                               instance.edge_weight * g.degree(j)) * s[1];
                for (int k : g.adjacency[static_cast<std::size_t>(j)]) {
                    const auto pair = oracle::exact_pair_survival(instance, j, k, stencil, tight);
                    rhs += instance.edge_weight * pair.values[1];
                }
                CHECK(std::abs(derivative - rhs) <= 1e-6);
            }
        }
    }
}

TEST_CASE("funnel equality on trees") {
    const std::vector<double> times{0.5, 1.0, 2.0, 5.0};
    // Path P3, middle node.
    const NetworkInstance p3{gen::gen_path(3), 1.0, 1.0, 0.0};
    const auto middle = oracle::funnel_check(p3, 1, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(std::abs(middle.gap[i]) <= 1e-7);
        CHECK(middle.bound[i] == 0.0);
    }
    // Star with 5 leaves, center node 0.
    const Graph star = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const NetworkInstance s5{star, 0.3, 0.7, 0.2};
    const auto center = oracle::funnel_check(s5, 0, times);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(center.gap[i]) <= 1e-7);
}

TEST_CASE("funnel inequality on the triangle") {
    const NetworkInstance k3{gen::gen_complete(3), 1.0, 1.0, 0.0};
    const std::vector<double> times{0.5, 1.0, 2.0};
    const auto report = oracle::funnel_check(k3, 0, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(report.gap[i] > 0.0);
        CHECK(report.gap[i] <= report.bound[i] + 1e-9);
        CHECK(report.lhs[i] > report.rhs[i]);
    }
}

TEST_CASE("funnel gap invariants on every small free tree") {
    const std::vector<double> times{0.5, 1.5};
    for (int n : {2, 3, 4, 5, 6}) {
        const auto trees = testsupport::all_free_trees(n);
        for (const auto& tree : trees) {
            const NetworkInstance instance{tree, 0.3, 0.7, 0.2};
            for (int j = 0; j < n; ++j) {
                const auto report = oracle::funnel_check(instance, j, times);
                for (std::size_t i = 0; i < times.size(); ++i) {
                    CHECK(report.gap[i] >= -1e-9);
                    CHECK(std::abs(report.gap[i]) <= 1e-7);
                }
            }
        }
    }
}

TEST_CASE("free tree enumeration counts") {
    const int expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47};
    for (int n = 1; n <= 9; ++n) {
        const auto trees = testsupport::all_free_trees(n);
        CHECK(static_cast<int>(trees.size()) == expected[n - 1]);
        for (const auto& t : trees) {
            CHECK(t.edge_count() == static_cast<std::size_t>(n - 1));
            t.validate();
        }
    }
}

TEST_CASE("super-exponential decay of the cycle gap") {
    // On cycles C_L the measured gap at fixed t shrinks with L faster than
    // geometrically: successive ratios must themselves decrease.
    const std::vector<double> times{1.0};
    std::vector<double> gaps;
    for (int len = 4; len <= 10; ++len) {
        const NetworkInstance cyc{gen::gen_cycle(len), 1.0, 1.0, 0.0};
        const auto report = oracle::funnel_check(cyc, 0, times);
        CHECK(report.gap[0] > 0.0);
        CHECK(report.gap[0] <= report.bound[0] + 1e-9);
        gaps.push_back(report.gap[0]);
    }
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
    std::vector<double> ratios;
    for (std::size_t i = 1; i < gaps.size(); ++i) ratios.push_back(gaps[i] / gaps[i - 1]);
    for (std::size_t i = 1; i < ratios.size(); ++i) CHECK(ratios[i] < ratios[i - 1] + 1e-12);
}

TEST_CASE("indifference principle") {
    const std::vector<double> times{0.5, 1.0, 2.0};
    const NetworkInstance dyad{gen::gen_path(2), 0.3, 0.8, 0.2};
    CHECK(oracle::indifference_check(dyad, 0, 1, times) <= 1e-7);

    const NetworkInstance p3{gen::gen_path(3), 0.4, 0.9, 0.1};
    CHECK(oracle::indifference_check(p3, 0, 1, times) <= 1e-7); // j = leaf

    const NetworkInstance frozen{gen::gen_path(3), 0.0, 0.9, 0.0};
    CHECK(oracle::indifference_check(frozen, 0, 1, times) <= 1e-12);

    CHECK_THROWS_AS(oracle::indifference_check(p3, 0, 2, times), std::invalid_argument);
}

TEST_CASE("capacity errors") {
    const std::vector<double> times{0.5};
    const NetworkInstance big{gen::gen_isolated(21), 0.1, 0.0, 0.0};
    CHECK_THROWS_AS(oracle::exact_marginals(big, times), capacity_error);

    OracleOptions small_cap;
    small_cap.cap = 10;
    const NetworkInstance medium{gen::gen_isolated(12), 0.1, 0.0, 0.0};
    CHECK_THROWS_AS(oracle::exact_marginals(medium, times, small_cap), capacity_error);
    OracleOptions over_cap;
    over_cap.cap = 25;
    CHECK_THROWS_AS(oracle::exact_marginals(big, times, over_cap), capacity_error);
}

TEST_CASE("deterministic per-node initial conditions") {
    // Patient zero at node 0 of a path: survival of node 0 is 0.
    const Graph path = gen::gen_path(3);
    const NetworkInstance instance{path, 0.0, 1.0, 0.0};
    const std::vector<double> i0{1.0, 0.0, 0.0};
    const std::vector<double> times{0.5, 1.0, 3.0};
    const auto marginals = oracle::exact_marginals(instance, times, i0);
    for (double v : marginals[0].values) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    // Middle node is pressured by the patient zero: [S_1] = e^{-qt}.
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(marginals[1].values[i] == doctest::Approx(std::exp(-times[i])).epsilon(1e-7));
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(marginals[2].values[i] < marginals[2].values[i - 1]);
}

TEST_SUITE_END();
