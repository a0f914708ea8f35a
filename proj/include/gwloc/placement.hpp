#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwloc/common.hpp"

namespace gwloc {

class HopMatrix;

/// Gateway set plus the per-cell association it induces.
struct Placement {
  std::vector<CellId> gateways;    // sorted ascending, distinct
  std::vector<CellId> assignment;  // serving gateway per cell
  std::vector<int> hops;           // hops from cell to its gateway

  int n() const { return static_cast<int>(assignment.size()); }
  int m() const { return static_cast<int>(gateways.size()); }
  long total_hops() const { return std::accumulate(hops.begin(), hops.end(), 0L); }
};

enum class Method { Baseline, KMeans, KMedoids, GA, KGA, KMGA, Exact };

std::string_view method_name(Method m);
/// Accepts the names printed by method_name (case-insensitive, '-' and '_' ignored).
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

/// Checks the Placement invariants against the hop matrix: m distinct gateways,
/// gateways serve themselves at 0 hops, every cell is served by a nearest
/// gateway (lowest id on ties). Returns a description of the first violation.
std::optional<std::string> check_placement(const Placement& p, const HopMatrix& d, int m);

}  // namespace gwloc
