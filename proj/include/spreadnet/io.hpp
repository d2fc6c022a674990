#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "spreadnet/graph.hpp"
#include "spreadnet/graphgen.hpp"
#include "spreadnet/oracle.hpp"
#include "spreadnet/sim.hpp"

namespace spreadnet::io {

/// Edge-list text format: first line "M E", then E lines "u v" with u < v,
/// sorted. Used by the CLI for caching generated graphs.
void write_edge_list(const Graph& graph, std::ostream& out);
Graph read_edge_list(std::istream& in);
void write_edge_list_file(const Graph& graph, const std::string& path);
Graph read_edge_list_file(const std::string& path);

/// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

/// "t,f"
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

/// "t,mean,stderr[,S_d0,S_d1,...]"
void write_ensemble_csv(const sim::EnsembleResult& result, std::ostream& out);

/// "L,count"
void write_census_csv(const gen::CycleCensus& census, std::ostream& out);

/// "t,lhs,rhs,gap,bound"
void write_funnel_csv(const oracle::FunnelReport& report, std::ostream& out);

/// "param,value"
void write_sweep_csv(const std::string& param_name, const std::map<double, double>& values,
                     std::ostream& out);

} // namespace spreadnet::io
