#include "gwloc/placement.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "gwloc/netgraph.hpp"

namespace gwloc {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Baseline:
      return "baseline";
    case Method::KMeans:
      return "kmeans";
    case Method::KMedoids:
      return "kmedoids";
    case Method::GA:
      return "ga";
    case Method::KGA:
      return "kga";
    case Method::KMGA:
      return "kmga";
    case Method::Exact:
      return "exact";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (Method m : all_methods()) {
    if (key == method_name(m)) return m;
  }
  if (key == "optimal" || key == "ilp") return Method::Exact;
  throw InvalidConfig(fmt::format("unknown method '{}'", name));
}

std::vector<Method> all_methods() {
  return {Method::Baseline, Method::KMeans, Method::KMedoids, Method::GA,
          Method::KGA,      Method::KMGA,   Method::Exact};
}

std::optional<std::string> check_placement(const Placement& p, const HopMatrix& d, int m) {
  const int n = d.size();
  if (p.m() != m) return fmt::format("expected {} gateways, got {}", m, p.m());
  if (p.n() != n || static_cast<int>(p.hops.size()) != n)
    return fmt::format("placement covers {} cells, graph has {}", p.n(), n);
  if (!std::is_sorted(p.gateways.begin(), p.gateways.end()) ||
      std::adjacent_find(p.gateways.begin(), p.gateways.end()) != p.gateways.end())
    return std::string("gateway list is not sorted and distinct");
  for (CellId gw : p.gateways) {
    if (gw < 0 || gw >= n) return fmt::format("gateway {} out of range", gw);
    if (p.assignment[gw] != gw || p.hops[gw] != 0) return fmt::format("gateway {} does not serve itself", gw);
  }
  for (CellId i = 0; i < n; ++i) {
    CellId best = -1;
    int best_hops = 0;
    for (CellId gw : p.gateways) {
      if (best < 0 || d(i, gw) < best_hops) {
        best = gw;
        best_hops = d(i, gw);
      }
    }
    if (p.hops[i] != best_hops) return fmt::format("cell {} has {} hops, nearest gateway is {} away", i, p.hops[i], best_hops);
    if (p.assignment[i] != best) return fmt::format("cell {} assigned to {}, expected {}", i, p.assignment[i], best);
  }
  return std::nullopt;
}

}  // namespace gwloc
