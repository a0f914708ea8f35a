#pragma once

#include <cstdint>

#include "gwloc/netgraph.hpp"
#include "gwloc/placement.hpp"

namespace gwloc {

struct ExactOptions {
  std::int64_t node_budget = 1'000'000'000;
};

struct ExactResult {
  Placement placement;
  long total_hops = 0;
  bool certified = false;  // false only when the node budget cut the search short
  std::int64_t nodes_explored = 0;
  std::int64_t nodes_pruned = 0;
};

/// Raised when the node budget runs out; carries the best placement found.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, ExactResult incumbent)
      : Error(what), incumbent_(std::move(incumbent)) {}
  const ExactResult& incumbent() const { return incumbent_; }

 private:
  ExactResult incumbent_;
};

/// Optimal p-median over hop distances by depth-first branch and bound.
///
/// Candidates are visited in order of increasing single-gateway cost and
/// subsets are enumerated as increasing position sequences. At a node with
/// partial set S and next position p the bound is
///   sum_i min(dist(i, S), min_{q >= p} d[i][cand_q]),
/// which never exceeds the cost of any completion. The incumbent starts from a
/// greedy-plus-interchange solution.
ExactResult exact_place(const ConnectivityGraph& g, const HopMatrix& d, int m, const ExactOptions& options = {});
ExactResult exact_place(const ConnectivityGraph& g, int m, const ExactOptions& options = {});

}  // namespace gwloc
