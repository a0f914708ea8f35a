#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gwloc/netgraph.hpp"
#include "gwloc/placement.hpp"
#include "gwloc/topogen.hpp"

namespace gwloc {

// Topology file:
//   # radius=<m> scenario=<name> seed=<u64> n=<count>
//   # <key>=<value> ...           optional generation details
//   id,x,y                        one record per cell, coordinates in meters
void write_topology(std::ostream& out, const Topology& topo);
void write_topology(const std::filesystem::path& path, const Topology& topo);
Topology read_topology(std::istream& in);
Topology read_topology(const std::filesystem::path& path);

// Placement dump:
//   # method=<name> m=<count> anh=<value>
//   cell_id,gateway_id,hops
void write_placement(std::ostream& out, const Placement& p, std::string_view method, double anh_value);
void write_placement(const std::filesystem::path& path, const Placement& p, std::string_view method, double anh_value);
Placement read_placement(std::istream& in);
Placement read_placement(const std::filesystem::path& path);

/// Edge list, one `i,j` per line with i < j, sorted.
void write_edge_list(std::ostream& out, const ConnectivityGraph& g);

/// Flat `key=value` lines; `#` starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_key_values(std::istream& in);
std::vector<std::string> split_list(const std::string& value, char sep = ',');

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace gwloc
