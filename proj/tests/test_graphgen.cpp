#include <doctest.h>

#include <cmath>
#include <set>

#include "spreadnet/graph.hpp"
#include "spreadnet/graphgen.hpp"
#include "spreadnet/rng.hpp"

using namespace spreadnet;
using gen::GraphFamily;

namespace {

// Outer 5-cycle, inner pentagram, spokes.
Graph petersen() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
        edges.emplace_back(i, 5 + i);
    }
    return Graph::from_edges(10, edges);
}

} // namespace

TEST_SUITE_BEGIN("graphgen");

TEST_CASE("gen_er degenerate probabilities") {
    CHECK(gen::gen_er(4, 0.0, 9).edge_count() == 0);
    CHECK(gen::gen_er(4, 4.0, 9).edge_count() == 6); // edge probability 1 -> K4
    CHECK_THROWS_AS(gen::gen_er(4, 5.0, 9), std::invalid_argument);
    CHECK_THROWS_AS(gen::gen_er(4, -1.0, 9), std::invalid_argument);
}

TEST_CASE("gen_er determinism") {
    const Graph a = gen::gen_er(300, 2.0, 123456);
    const Graph b = gen::gen_er(300, 2.0, 123456);
    const Graph c = gen::gen_er(300, 2.0, 123457);
    CHECK(a.adjacency == b.adjacency);
    CHECK(a.adjacency != c.adjacency);
}

TEST_CASE("gen_er mean degree matches lambda (M-1)/M") {
    const int m = 2000;
    const double lambda = 3.0;
    const Graph g = gen::gen_er(m, lambda, 2026);
    const double mean_degree = 2.0 * static_cast<double>(g.edge_count()) / m;
    // E = Binomial(C(M,2), lambda/M); SE of the mean degree = 2 sd(E)/M.
    const double p_edge = lambda / m;
    const double pairs = 0.5 * m * (m - 1);
    const double se = 2.0 * std::sqrt(pairs * p_edge * (1.0 - p_edge)) / m;
    CHECK(std::abs(mean_degree - lambda * (m - 1) / m) <= 4.0 * se);
}

TEST_CASE("gen_dregular basics") {
    const Graph k4 = gen::gen_dregular(4, 3, 7);
    CHECK(k4.edge_count() == 6); // unique 3-regular graph on 4 nodes
    CHECK_THROWS_AS(gen::gen_dregular(5, 3, 7), parity_error);
    CHECK_THROWS_AS(gen::gen_dregular(4, 4, 7), std::invalid_argument);
    CHECK_THROWS_AS(gen::gen_dregular(4, 1, 7), std::invalid_argument);
}

TEST_CASE("gen_dregular large graph passes full validation") {
    const Graph g = gen::gen_dregular(10000, 4, 99);
    g.validate();
    for (int j = 0; j < g.node_count(); ++j) REQUIRE(g.degree(j) == 4);
    const Graph same = gen::gen_dregular(10000, 4, 99);
    CHECK(g.adjacency == same.adjacency);
}

TEST_CASE("torus shapes") {
    const Graph c7 = gen::gen_cartesian_torus(1, 7);
    CHECK(c7.node_count() == 7);
    CHECK(c7.edge_count() == 7);
    for (int j = 0; j < 7; ++j) CHECK(c7.degree(j) == 2);

    const Graph t2 = gen::gen_cartesian_torus(2, 3);
    CHECK(t2.node_count() == 9);
    CHECK(t2.edge_count() == 18);
    for (int j = 0; j < 9; ++j) CHECK(t2.degree(j) == 4);

    const Graph t3 = gen::gen_cartesian_torus(3, 10);
    CHECK(t3.node_count() == 1000);
    CHECK(t3.edge_count() == 3000);
    t3.validate();

    CHECK_THROWS_AS(gen::gen_cartesian_torus(2, 2), std::invalid_argument);
}

TEST_CASE("degenerate families") {
    CHECK(gen::gen_isolated(5).edge_count() == 0);
    const Graph c6 = gen::gen_cycle(6);
    CHECK(c6.edge_count() == 6);
    for (int j = 0; j < 6; ++j) CHECK(c6.degree(j) == 2);
    CHECK(gen::gen_complete(4).edge_count() == 6);
    CHECK_THROWS_AS(gen::gen_cycle(2), std::invalid_argument);
}

TEST_CASE("cycle census on small graphs") {
    const auto k4 = gen::count_cycles_through(gen::gen_complete(4), 0, 3);
    CHECK(k4.counts.at(3) == 3);

    auto c6 = gen::count_cycles_through(gen::gen_cycle(6), 0, 6);
    CHECK(c6.counts.size() == 1);
    CHECK(c6.counts.at(6) == 1);

    CHECK_THROWS_AS(gen::count_cycles_through(gen::gen_cycle(6), 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(gen::count_cycles_through(gen::gen_cycle(6), 0, 7), std::invalid_argument);
}

TEST_CASE("cycle census on the Petersen graph") {
    const Graph g = petersen();
    for (int j = 0; j < 10; ++j) {
        const auto census = gen::count_cycles_through(g, j, 5);
        CHECK(census.counts.count(3) == 0);
        CHECK(census.counts.count(4) == 0);
        CHECK(census.counts.at(5) == 6); // 12 pentagons * 5 / 10 nodes
    }
}

TEST_CASE("census is node-independent on vertex-transitive graphs") {
    const Graph torus = gen::gen_cartesian_torus(2, 4);
    const auto reference = gen::count_cycles_through(torus, 0, 6).counts;
    for (int j : {3, 7, 11, 15}) CHECK(gen::count_cycles_through(torus, j, 6).counts == reference);

    const Graph k5 = gen::gen_complete(5);
    const auto ref5 = gen::count_cycles_through(k5, 0, 5).counts;
    CHECK(ref5.at(3) == 6);  // C(4,2) pairs of neighbors
    CHECK(ref5.at(4) == 12); // 3 * (4 choose 3 arrangements)/2 per triple -> full count
    for (int j = 1; j < 5; ++j) CHECK(gen::count_cycles_through(k5, j, 5).counts == ref5);
}

TEST_CASE("expected cycle formulas") {
    CHECK(gen::expected_cycles_er(2, 1.0, 3, 100) == doctest::Approx(0.01));
    CHECK(gen::expected_cycles_er(3, 2.0, 4, 1000) == doctest::Approx(0.012));
    CHECK(gen::expected_cycles_dreg(3, 3, 1000) == doctest::Approx(0.004));
    CHECK(gen::expected_cycles_dreg(3, 5, 1000) == doctest::Approx(0.016));
    CHECK_THROWS_AS(gen::expected_cycles_er(1, 1.0, 3, 100), std::invalid_argument);
    CHECK_THROWS_AS(gen::expected_cycles_dreg(2, 3, 100), std::invalid_argument);
}

TEST_CASE("degree pmfs") {
    CHECK(gen::degree_pmf_poisson(0, 0.5) == doctest::Approx(std::exp(-0.5)));
    CHECK(gen::degree_pmf_poisson(0, 1e-14) == doctest::Approx(1.0));
    double total = 0.0;
    for (int d = 0; d <= 50; ++d) total += gen::degree_pmf_poisson(d, 3.0);
    CHECK(std::abs(total - 1.0) <= 1e-12);

    double total_binom = 0.0;
    for (int d = 0; d < 200; ++d) total_binom += gen::degree_pmf_binomial(d, 200, 3.0);
    CHECK(std::abs(total_binom - 1.0) <= 1e-12);
    // Binomial approaches the Poisson limit.
    CHECK(gen::degree_pmf_binomial(2, 100000, 3.0) == doctest::Approx(gen::degree_pmf_poisson(2, 3.0)).epsilon(1e-3));
}

TEST_CASE("ER conditional cycle counts track kappa/M across sizes") {
    // Mean of c_L(j | d_j = d) scaled by M approaches kappa = d(d-1)/2 lambda^{L-2};
    // band check at three sizes, conditioning by rejection on the probe degree.
    const int d = 3, len = 4;
    const double lambda = 2.0;
    for (int m : {500, 1000, 2000}) {
        const int samples = 600;
        double sum = 0.0, sum_sq = 0.0;
        std::uint64_t attempt = 0;
        int done = 0;
        while (done < samples) {
            const Graph g = gen::gen_er(m, lambda, derive_seed(505, attempt++));
            if (g.degree(0) != d) continue;
            const auto census = gen::count_cycles_through(g, 0, len);
            const auto it = census.counts.find(len);
            const double c = it == census.counts.end() ? 0.0 : static_cast<double>(it->second);
            sum += c;
            sum_sq += c * c;
            ++done;
        }
        const double mean = sum / samples;
        const double var = (sum_sq - samples * mean * mean) / (samples - 1);
        const double se = std::sqrt(std::max(var, 1e-12) / samples);
        const double asymptotic = gen::expected_cycles_er(d, lambda, len, m);
        CHECK(std::abs(mean - asymptotic) <= 3.0 * se);
        // One-sided 99% band for the strict upper bound.
        CHECK(mean <= asymptotic + 2.576 * se);
    }
}

TEST_CASE("family builders") {
    CHECK(GraphFamily::er(100, 2.0).describe() == "er(M=100,lambda=2.000000)");
    CHECK(GraphFamily::torus(3, 5).node_count() == 125);
    const auto inst = gen::build_instance(GraphFamily::torus(2, 5), SpreadParams{0.0, 0.1, 0.05}, 3);
    CHECK(inst.edge_weight == doctest::Approx(0.025)); // q / (2D)
    const auto iso = gen::build_instance(GraphFamily::isolated(10), SpreadParams{0.5, 0.1, 0.0}, 3);
    CHECK(iso.edge_weight == 0.0);
}

TEST_SUITE_END();
