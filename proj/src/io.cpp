#include "spreadnet/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spreadnet::io {

void write_edge_list(const Graph& graph, std::ostream& out) {
    const auto edges = graph.edges();
    out << graph.node_count() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
    int nodes = 0;
    std::size_t count = 0;
    if (!(in >> nodes >> count)) throw std::runtime_error("edge list: missing header line \"M E\"");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v))
            throw std::runtime_error("edge list: expected " + std::to_string(count) + " edges, got " +
                                     std::to_string(i));
        if (u >= v) throw std::runtime_error("edge list: edges must satisfy u < v");
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(nodes, edges);
}

void write_edge_list_file(const Graph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_edge_list(graph, out);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

std::string format_double(double v) {
    char buf[32];
    // %.17g always round-trips but litters trailing digits; try shorter forms
    // first and keep the first that parses back exactly.
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,f\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        out << format_double(traj.times[i]) << ',' << format_double(traj.values[i]) << '\n';
}

void write_ensemble_csv(const sim::EnsembleResult& result, std::ostream& out) {
    out << "t,mean,stderr";
    for (const auto& [d, traj] : result.by_degree) out << ",S_d" << d;
    out << '\n';
    const auto& grid = result.grid;
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
        out << format_double(grid.times[i]) << ',' << format_double(grid.values[i]) << ','
            << format_double(grid.stderrs.empty() ? 0.0 : grid.stderrs[i]);
        for (const auto& [d, traj] : result.by_degree) out << ',' << format_double(traj.values[i]);
        out << '\n';
    }
}

void write_census_csv(const gen::CycleCensus& census, std::ostream& out) {
    out << "L,count\n";
    for (const auto& [len, count] : census.counts) out << len << ',' << count << '\n';
}

void write_funnel_csv(const oracle::FunnelReport& report, std::ostream& out) {
    out << "t,lhs,rhs,gap,bound\n";
    for (std::size_t i = 0; i < report.times.size(); ++i)
        out << format_double(report.times[i]) << ',' << format_double(report.lhs[i]) << ','
            << format_double(report.rhs[i]) << ',' << format_double(report.gap[i]) << ','
            << format_double(report.bound[i]) << '\n';
}

void write_sweep_csv(const std::string& param_name, const std::map<double, double>& values,
                     std::ostream& out) {
    out << param_name << ",value\n";
    for (const auto& [k, v] : values) out << format_double(k) << ',' << format_double(v) << '\n';
}

} // namespace spreadnet::io
