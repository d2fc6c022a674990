#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spreadnet/analytic.hpp"
#include "spreadnet/graph.hpp"
#include "spreadnet/graphgen.hpp"
#include "spreadnet/oracle.hpp"
#include "spreadnet/sim.hpp"

namespace py = pybind11;
using namespace spreadnet;

namespace {

SpreadParams make_params(double p, double q, double i0) {
    SpreadParams params{p, q, i0};
    params.validate();
    return params;
}

gen::GraphFamily family_from(const std::string& kind, const py::kwargs& kw) {
    auto geti = [&](const char* key) { return kw[key].cast<int>(); };
    if (kind == "er") return gen::GraphFamily::er(geti("nodes"), kw["lambda_"].cast<double>());
    if (kind == "dreg") return gen::GraphFamily::dreg(geti("nodes"), geti("degree"));
    if (kind == "torus") return gen::GraphFamily::torus(geti("dim"), geti("side"));
    if (kind == "isolated") return gen::GraphFamily::isolated(geti("nodes"));
    if (kind == "cycle") return gen::GraphFamily::cycle(geti("nodes"));
    if (kind == "complete") return gen::GraphFamily::complete(geti("nodes"));
    throw std::invalid_argument("unknown family '" + kind + "'");
}

py::dict trajectory_dict(const Trajectory& traj) {
    py::dict d;
    d["times"] = traj.times;
    d["values"] = traj.values;
    if (!traj.stderrs.empty()) d["stderr"] = traj.stderrs;
    return d;
}

} // namespace

PYBIND11_MODULE(_spreadnet, m) {
    m.doc() = "Bass/SI spreading on random networks: simulator, exact ODE curves, small-network oracle";

    py::register_exception<shape_error>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<parity_error>(m, "ParityError", PyExc_ValueError);
    py::register_exception<capacity_error>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<no_crossing_error>(m, "NoCrossingError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def_static("from_edges", &Graph::from_edges, py::arg("node_count"), py::arg("edges"))
        .def("node_count", &Graph::node_count)
        .def("degree", &Graph::degree)
        .def("edge_count", &Graph::edge_count)
        .def("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge)
        .def("validate", &Graph::validate)
        .def_readonly("adjacency", &Graph::adjacency);

    py::class_<SpreadParams>(m, "SpreadParams")
        .def(py::init(&make_params), py::arg("p"), py::arg("q"), py::arg("i0") = 0.0)
        .def_readonly("p", &SpreadParams::p)
        .def_readonly("q", &SpreadParams::q)
        .def_readonly("i0", &SpreadParams::i0);

    py::class_<NetworkInstance>(m, "NetworkInstance")
        .def(py::init([](Graph g, double node_weight, double edge_weight, double i0) {
                 return NetworkInstance{std::move(g), node_weight, edge_weight, i0};
             }),
             py::arg("graph"), py::arg("node_weight"), py::arg("edge_weight"), py::arg("i0") = 0.0)
        .def_readonly("graph", &NetworkInstance::graph)
        .def_readonly("node_weight", &NetworkInstance::node_weight)
        .def_readonly("edge_weight", &NetworkInstance::edge_weight)
        .def_readonly("i0", &NetworkInstance::i0);

    m.def("make_er_instance", &make_er_instance, py::arg("graph"), py::arg("params"), py::arg("lambda_"));
    m.def("make_dreg_instance", &make_dreg_instance, py::arg("graph"), py::arg("params"), py::arg("d"));

    m.def("gen_er", &gen::gen_er, py::arg("nodes"), py::arg("lambda_"), py::arg("seed"));
    m.def("gen_dregular", &gen::gen_dregular, py::arg("nodes"), py::arg("d"), py::arg("seed"));
    m.def("gen_cartesian_torus", &gen::gen_cartesian_torus, py::arg("dim"), py::arg("side"));
    m.def("gen_isolated", &gen::gen_isolated, py::arg("nodes"));
    m.def("gen_cycle", &gen::gen_cycle, py::arg("nodes"));
    m.def("gen_complete", &gen::gen_complete, py::arg("nodes"));
    m.def("gen_path", &gen::gen_path, py::arg("nodes"));

    m.def(
        "count_cycles_through",
        [](const Graph& g, int node, int max_len) {
            return gen::count_cycles_through(g, node, max_len).counts;
        },
        py::arg("graph"), py::arg("node"), py::arg("max_len"));
    m.def("expected_cycles_er", &gen::expected_cycles_er, py::arg("d"), py::arg("lambda_"), py::arg("len"),
          py::arg("nodes"));
    m.def("expected_cycles_dreg", &gen::expected_cycles_dreg, py::arg("d"), py::arg("len"), py::arg("nodes"));
    m.def("degree_pmf_poisson", &gen::degree_pmf_poisson, py::arg("d"), py::arg("lambda_"));
    m.def("degree_pmf_binomial", &gen::degree_pmf_binomial, py::arg("d"), py::arg("nodes"), py::arg("lambda_"));

    m.def(
        "simulate",
        [](const NetworkInstance& instance, double horizon, std::uint64_t seed) {
            const auto run = sim::simulate(instance, horizon, seed);
            py::dict d;
            d["adoption_times"] = run.adoption_times;
            d["initial_adopters"] = run.initial_adopters;
            return d;
        },
        py::arg("instance"), py::arg("horizon"), py::arg("seed"));

    m.def(
        "ensemble",
        [](const std::string& family, const py::kwargs& kw) {
            const auto fam = family_from(family, kw);
            SpreadParams params = make_params(kw["p"].cast<double>(), kw["q"].cast<double>(),
                                              kw.contains("i0") ? kw["i0"].cast<double>() : 0.0);
            sim::EnsembleOptions opt;
            opt.runs = kw.contains("runs") ? kw["runs"].cast<int>() : 100;
            opt.horizon = kw["horizon"].cast<double>();
            if (kw.contains("grid_points")) opt.grid_points = kw["grid_points"].cast<int>();
            if (kw.contains("resample_graph")) opt.resample_graph = kw["resample_graph"].cast<bool>();
            if (kw.contains("by_degree")) opt.by_degree = kw["by_degree"].cast<bool>();
            if (kw.contains("seed")) opt.master_seed = kw["seed"].cast<std::uint64_t>();
            if (kw.contains("threads")) opt.threads = kw["threads"].cast<int>();
            const auto res = sim::ensemble(fam, params, opt);
            py::dict d;
            d["grid"] = trajectory_dict(res.grid);
            py::dict by_degree;
            for (const auto& [deg, traj] : res.by_degree) by_degree[py::int_(deg)] = trajectory_dict(traj);
            d["by_degree"] = by_degree;
            d["by_degree_occupancy"] = res.by_degree_occupancy;
            return d;
        },
        py::arg("family"));

    m.def(
        "solve_er",
        [](double p, double q, double i0, double lambda, std::vector<double> grid) {
            const auto sol = analytic::solve_er(make_params(p, q, i0), lambda, grid);
            py::dict d;
            d["f"] = trajectory_dict(sol.f);
            d["y"] = trajectory_dict(sol.y);
            d["z"] = trajectory_dict(sol.z);
            return d;
        },
        py::arg("p"), py::arg("q"), py::arg("i0"), py::arg("lambda_"), py::arg("grid"));

    m.def(
        "solve_dreg",
        [](double p, double q, double i0, int d, std::vector<double> grid) {
            const auto sol = analytic::solve_dreg(make_params(p, q, i0), d, grid);
            py::dict out;
            out["f"] = trajectory_dict(sol.f);
            out["y"] = trajectory_dict(sol.y);
            out["s"] = trajectory_dict(sol.s);
            out["s_ode_sup_deviation"] = sol.s_ode_sup_deviation;
            return out;
        },
        py::arg("p"), py::arg("q"), py::arg("i0"), py::arg("d"), py::arg("grid"));

    m.def("f_isolated", &analytic::f_isolated, py::arg("t"), py::arg("p"), py::arg("i0"));
    m.def(
        "f_compartmental",
        [](double p, double q, double i0, std::vector<double> grid) {
            return trajectory_dict(analytic::f_compartmental(make_params(p, q, i0), grid));
        },
        py::arg("p"), py::arg("q"), py::arg("i0"), py::arg("grid"));
    m.def("f_compartmental_closed", &analytic::f_compartmental_closed, py::arg("t"), py::arg("p"),
          py::arg("q"));
    m.def(
        "f_1d",
        [](double t, double p, double q, double i0) { return analytic::f_1d(t, make_params(p, q, i0)); },
        py::arg("t"), py::arg("p"), py::arg("q"), py::arg("i0"));
    m.def("final_infection_level", &analytic::final_infection_level, py::arg("lambda_"), py::arg("i0"));
    m.def("giant_component", &analytic::giant_component, py::arg("lambda_"));
    m.def("ysi_infinity", &analytic::ysi_infinity, py::arg("lambda_"), py::arg("i0"));
    m.def(
        "half_life",
        [](const std::string& model, double p, double q, double i0, double lambda, int d) {
            const SpreadParams params = make_params(p, q, i0);
            if (model == "isolated") return analytic::half_life_isolated(params);
            if (model == "compart") return analytic::half_life_compartmental(params);
            if (model == "er") return analytic::half_life_er(params, lambda);
            if (model == "dreg") return analytic::half_life_dreg(params, d);
            throw std::invalid_argument("half_life: unknown model '" + model + "'");
        },
        py::arg("model"), py::arg("p"), py::arg("q"), py::arg("i0") = 0.0, py::arg("lambda_") = 0.0,
        py::arg("d") = 0);

    m.def(
        "exact_marginals",
        [](const NetworkInstance& instance, std::vector<double> times) {
            const auto marginals = oracle::exact_marginals(instance, times);
            py::list out;
            for (const auto& traj : marginals) out.append(trajectory_dict(traj));
            return out;
        },
        py::arg("instance"), py::arg("times"));
    m.def(
        "exact_distribution",
        [](const NetworkInstance& instance, std::vector<double> times) {
            return oracle::exact_distribution(instance, times);
        },
        py::arg("instance"), py::arg("times"));
    m.def(
        "exact_pair_survival",
        [](const NetworkInstance& instance, int j, int k, std::vector<double> times) {
            return trajectory_dict(oracle::exact_pair_survival(instance, j, k, times));
        },
        py::arg("instance"), py::arg("j"), py::arg("k"), py::arg("times"));
    m.def(
        "funnel_check",
        [](const NetworkInstance& instance, int j, std::vector<double> times) {
            const auto report = oracle::funnel_check(instance, j, times);
            py::dict d;
            d["node"] = report.node;
            d["times"] = report.times;
            d["lhs"] = report.lhs;
            d["rhs"] = report.rhs;
            d["gap"] = report.gap;
            d["bound"] = report.bound;
            return d;
        },
        py::arg("instance"), py::arg("j"), py::arg("times"));
    m.def(
        "indifference_check",
        [](const NetworkInstance& instance, int j, int k, std::vector<double> times) {
            return oracle::indifference_check(instance, j, k, times);
        },
        py::arg("instance"), py::arg("j"), py::arg("k"), py::arg("times"));
}
