#include "gwloc/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace gwloc {

std::string format_double(double v) { return fmt::format("{}", v); }

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_number(const std::string& text, std::string_view what) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) throw ParseError(fmt::format("bad {} '{}'", what, text));
  return value;
}

double parse_double(const std::string& text, std::string_view what) {
  // std::from_chars for double is missing from older libstdc++.
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(fmt::format("bad {} '{}'", what, text));
  }
  if (used != text.size()) throw ParseError(fmt::format("bad {} '{}'", what, text));
  return v;
}

std::map<std::string, std::string> parse_tokens(std::string_view line) {
  std::map<std::string, std::string> kv;
  std::istringstream ss{std::string(line)};
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

}  // namespace

std::vector<std::string> split_list(const std::string& value, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(fmt::format("line {}: expected key=value", lineno));
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void write_topology(std::ostream& out, const Topology& topo) {
  const auto& c = topo.config;
  fmt::print(out, "# radius={} scenario={} seed={} n={}\n", format_double(c.area_radius), scenario_name(c.scenario),
             c.seed, topo.size());
  fmt::print(out, "# mode={} density={} min_separation={} cluster_separation={} sigma_fraction={}\n",
             c.node_count_mode == NodeCountMode::Fixed ? "fixed" : "poisson", c.density,
             format_double(c.resolved_min_separation()), format_double(c.cluster_separation),
             format_double(c.gaussian_sigma_fraction));
  if (c.scenario == Scenario::Cluster) {
    fmt::print(out, "# cluster_count={} ring={} cluster_radius={} cluster_sigma={} cluster_fraction={}\n",
               c.cluster_count, format_double(c.resolved_ring_radius()), format_double(c.cluster_radius),
               format_double(c.resolved_cluster_sigma()), format_double(c.cluster_fraction));
    for (std::size_t k = 0; k < topo.centers.size(); ++k)
      fmt::print(out, "# center={},{},{}\n", k, format_double(topo.centers[k].x), format_double(topo.centers[k].y));
    std::string groups;
    for (std::size_t i = 0; i < topo.groups.size(); ++i) {
      if (i) groups += ',';
      groups += std::to_string(topo.groups[i]);
    }
    fmt::print(out, "# groups={}\n", groups);
  }
  for (CellId i = 0; i < topo.size(); ++i)
    fmt::print(out, "{},{},{}\n", i, format_double(topo.cells[i].x), format_double(topo.cells[i].y));
}

void write_topology(const std::filesystem::path& path, const Topology& topo) {
  auto out = open_out(path);
  write_topology(out, topo);
}

Topology read_topology(std::istream& in) {
  Topology topo;
  auto& c = topo.config;
  std::string line;
  int lineno = 0;
  int declared_n = -1;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto kv = parse_tokens(std::string_view(line).substr(1));
      for (const auto& [key, value] : kv) {
        if (key == "radius") {
          c.area_radius = parse_double(value, "radius");
          saw_header = true;
        } else if (key == "scenario") {
          c.scenario = parse_scenario(value);
        } else if (key == "seed") {
          c.seed = parse_number<std::uint64_t>(value, "seed");
        } else if (key == "n") {
          declared_n = parse_number<int>(value, "n");
        } else if (key == "mode") {
          c.node_count_mode = value == "poisson" ? NodeCountMode::Poisson : NodeCountMode::Fixed;
        } else if (key == "density") {
          c.density = parse_number<int>(value, "density");
        } else if (key == "min_separation") {
          c.min_separation = parse_double(value, "min_separation");
        } else if (key == "cluster_separation") {
          c.cluster_separation = parse_double(value, "cluster_separation");
        } else if (key == "sigma_fraction") {
          c.gaussian_sigma_fraction = parse_double(value, "sigma_fraction");
        } else if (key == "cluster_count") {
          c.cluster_count = parse_number<int>(value, "cluster_count");
        } else if (key == "ring") {
          c.cluster_ring_radius = parse_double(value, "ring");
        } else if (key == "cluster_radius") {
          c.cluster_radius = parse_double(value, "cluster_radius");
        } else if (key == "cluster_sigma") {
          c.cluster_sigma = parse_double(value, "cluster_sigma");
        } else if (key == "cluster_fraction") {
          c.cluster_fraction = parse_double(value, "cluster_fraction");
        } else if (key == "center") {
          const auto parts = split_list(value);
          if (parts.size() != 3) throw ParseError(fmt::format("line {}: bad center", lineno));
          topo.centers.push_back({parse_double(parts[1], "center x"), parse_double(parts[2], "center y")});
        } else if (key == "groups") {
          for (const auto& g : split_list(value)) topo.groups.push_back(parse_number<int>(g, "group"));
        }
      }
      continue;
    }
    const auto parts = split_list(line);
    if (parts.size() != 3) throw ParseError(fmt::format("line {}: expected id,x,y", lineno));
    const int id = parse_number<int>(parts[0], "cell id");
    if (id != topo.size()) throw ParseError(fmt::format("line {}: cell id {} out of order", lineno, id));
    topo.cells.push_back({parse_double(parts[1], "x"), parse_double(parts[2], "y")});
  }
  if (!saw_header) throw ParseError("missing '# radius=... scenario=...' header");
  if (declared_n >= 0 && declared_n != topo.size())
    throw ParseError(fmt::format("header declares n={} but {} records follow", declared_n, topo.size()));
  if (topo.groups.empty()) topo.groups.assign(topo.cells.size(), -1);
  if (topo.groups.size() != topo.cells.size()) throw ParseError("groups line does not match cell count");
  return topo;
}

Topology read_topology(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_topology(in);
}

void write_placement(std::ostream& out, const Placement& p, std::string_view method, double anh_value) {
  fmt::print(out, "# method={} m={} anh={}\n", method, p.m(), format_double(anh_value));
  for (CellId i = 0; i < p.n(); ++i) fmt::print(out, "{},{},{}\n", i, p.assignment[i], p.hops[i]);
}

void write_placement(const std::filesystem::path& path, const Placement& p, std::string_view method, double anh_value) {
  auto out = open_out(path);
  write_placement(out, p, method, anh_value);
}

Placement read_placement(std::istream& in) {
  Placement p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto parts = split_list(line);
    if (parts.size() != 3) throw ParseError(fmt::format("line {}: expected cell_id,gateway_id,hops", lineno));
    const int id = parse_number<int>(parts[0], "cell id");
    if (id != p.n()) throw ParseError(fmt::format("line {}: cell id {} out of order", lineno, id));
    p.assignment.push_back(parse_number<int>(parts[1], "gateway id"));
    p.hops.push_back(parse_number<int>(parts[2], "hops"));
  }
  for (CellId i = 0; i < p.n(); ++i) {
    if (p.assignment[i] == i) p.gateways.push_back(i);
  }
  return p;
}

Placement read_placement(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_placement(in);
}

void write_edge_list(std::ostream& out, const ConnectivityGraph& g) {
  for (auto [i, j] : g.edges()) fmt::print(out, "{},{}\n", i, j);
}

}  // namespace gwloc
