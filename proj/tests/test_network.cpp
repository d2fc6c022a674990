#include <doctest.h>

#include <sstream>

#include "spreadnet/graph.hpp"
#include "spreadnet/graphgen.hpp"
#include "spreadnet/io.hpp"
#include "spreadnet/rng.hpp"

using namespace spreadnet;

TEST_SUITE_BEGIN("network");

TEST_CASE("graph construction rejects malformed edges") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    const Graph g = Graph::from_edges(4, {{2, 3}, {0, 1}, {0, 2}});
    CHECK(g.edge_count() == 3);
    CHECK(g.degree(0) == 2);
    CHECK(g.has_edge(3, 2));
    CHECK_FALSE(g.has_edge(1, 3));
    g.validate();
}

TEST_CASE("adjacency is sorted and symmetric for sampled graphs") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const Graph g = gen::gen_er(200, 3.0, seed);
        g.validate(); // sortedness, symmetry, no loops/dups
    }
}

TEST_CASE("spread params invariants") {
    CHECK_THROWS_AS((SpreadParams{0.1, 0.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SpreadParams{-0.1, 0.5, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SpreadParams{0.1, 0.5, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SpreadParams{0.0, 0.5, 0.0}.validate()), std::invalid_argument);
    SpreadParams{0.0, 0.5, 0.2}.validate();
    SpreadParams{0.3, 0.5, 0.0}.validate();
}

TEST_CASE("make_er_instance applies q/lambda") {
    const Graph g = gen::gen_cycle(6);
    const auto inst = make_er_instance(g, SpreadParams{0.001, 0.05, 0.0}, 0.5);
    CHECK(inst.node_weight == doctest::Approx(0.001));
    CHECK(inst.edge_weight == doctest::Approx(0.1));
    CHECK(inst.i0 == 0.0);

    const auto identity = make_er_instance(g, SpreadParams{0.001, 0.05, 0.0}, 1.0);
    CHECK(identity.edge_weight == doctest::Approx(0.05));

    CHECK_THROWS_AS(make_er_instance(g, SpreadParams{0.001, 0.05, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_er_instance(g, SpreadParams{0.001, 0.05, 0.0}, -2.0), std::invalid_argument);
}

TEST_CASE("ensemble total edge weight is (M-1) q on average") {
    // Footnote identity: E[sum_kj q_kj] = (M-1) q for the q/lambda scaling.
    const int m = 400;
    const double lambda = 3.0, q = 0.05;
    const int samples = 200;
    double mean = 0.0, sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Graph g = gen::gen_er(m, lambda, derive_seed(77, static_cast<std::uint64_t>(s)));
        const double total = 2.0 * static_cast<double>(g.edge_count()) * (q / lambda);
        mean += total;
        sq += total * total;
    }
    mean /= samples;
    const double var = (sq - samples * mean * mean) / (samples - 1);
    const double se = std::sqrt(var / samples);
    CHECK(std::abs(mean - (m - 1) * q) <= 4.0 * se + 1e-12);
}

TEST_CASE("make_dreg_instance: incident weight sum is exactly q") {
    const auto k4 = gen::gen_complete(4);
    const auto inst = make_dreg_instance(k4, SpreadParams{0.001, 0.05, 0.0}, 3);
    CHECK(inst.edge_weight == doctest::Approx(0.05 / 3));
    for (int j = 0; j < 4; ++j) {
        const double incident = inst.edge_weight * inst.graph.degree(j);
        CHECK(std::abs(incident - 0.05) <= 1e-12);
    }

    const auto c8 = gen::gen_cycle(8);
    CHECK(make_dreg_instance(c8, SpreadParams{0.0, 0.1, 0.1}, 2).edge_weight == doctest::Approx(0.05));

    const auto path = gen::gen_path(5);
    CHECK_THROWS_AS(make_dreg_instance(path, SpreadParams{0.001, 0.05, 0.0}, 2), shape_error);
}

TEST_CASE("uniform grid starts at zero") {
    const auto g = uniform_grid(10.0, 5);
    CHECK(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(10.0));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("csv emitters use the documented headers") {
    gen::CycleCensus census;
    census.node = 0;
    census.counts = {{3, 2}, {5, 1}};
    std::stringstream cs;
    io::write_census_csv(census, cs);
    CHECK(cs.str() == "L,count\n3,2\n5,1\n");

    Trajectory traj;
    traj.times = {0.0, 1.0};
    traj.values = {0.25, 0.5};
    std::stringstream ts;
    io::write_trajectory_csv(traj, ts);
    CHECK(ts.str() == "t,f\n0,0.25\n1,0.5\n");

    std::stringstream ss;
    io::write_sweep_csv("lambda", {{0.5, 1.25}, {1.0, 0.75}}, ss);
    CHECK(ss.str() == "lambda,value\n0.5,1.25\n1,0.75\n");

    oracle::FunnelReport report;
    report.times = {1.0};
    report.lhs = {0.5};
    report.rhs = {0.5};
    report.gap = {0.0};
    report.bound = {0.125};
    std::stringstream fos;
    io::write_funnel_csv(report, fos);
    CHECK(fos.str() == "t,lhs,rhs,gap,bound\n1,0.5,0.5,0,0.125\n");
}

TEST_CASE("edge list round trip") {
    const Graph g = gen::gen_er(50, 2.5, 42);
    std::stringstream buffer;
    io::write_edge_list(g, buffer);
    const Graph back = io::read_edge_list(buffer);
    CHECK(back.node_count() == g.node_count());
    CHECK(back.adjacency == g.adjacency);

    std::stringstream bad("3 1\n2 1\n");
    CHECK_THROWS(io::read_edge_list(bad));
}

TEST_SUITE_END();
