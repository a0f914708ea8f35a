#include "gwloc/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace gwloc {

namespace {

constexpr int kFar = 1 << 28;

long set_cost(const HopMatrix& d, std::span<const CellId> set) {
  long total = 0;
  for (CellId i = 0; i < d.size(); ++i) {
    int best = kFar;
    for (CellId s : set) best = std::min(best, d(i, s));
    total += best;
  }
  return total;
}

// Greedy add followed by first-improvement single swaps.
std::vector<CellId> interchange_start(const HopMatrix& d, int m) {
  const int n = d.size();
  std::vector<CellId> set;
  std::vector<int> cur(n, kFar);
  std::vector<char> used(n, 0);
  for (int k = 0; k < m; ++k) {
    CellId best = -1;
    long best_cost = std::numeric_limits<long>::max();
    for (CellId c = 0; c < n; ++c) {
      if (used[c]) continue;
      long cost = 0;
      for (CellId i = 0; i < n; ++i) cost += std::min(cur[i], d(i, c));
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    used[best] = 1;
    set.push_back(best);
    for (CellId i = 0; i < n; ++i) cur[i] = std::min(cur[i], d(i, best));
  }

  long cost = set_cost(d, set);
  for (bool improved = true; improved;) {
    improved = false;
    for (int slot = 0; slot < m && !improved; ++slot) {
      for (CellId c = 0; c < n && !improved; ++c) {
        if (used[c]) continue;
        const CellId old = set[slot];
        set[slot] = c;
        const long trial = set_cost(d, set);
        if (trial < cost) {
          cost = trial;
          used[old] = 0;
          used[c] = 1;
          improved = true;
        } else {
          set[slot] = old;
        }
      }
    }
  }
  return set;
}

class BranchAndBound {
 public:
  BranchAndBound(const HopMatrix& d, int m, std::int64_t budget) : d_(d), n_(d.size()), m_(m), budget_(budget) {
    // Candidates with small single-gateway cost first: good sets show up early.
    std::vector<long> row_sum(n_, 0);
    for (CellId c = 0; c < n_; ++c) {
      const auto row = d_.row(c);
      row_sum[c] = std::accumulate(row.begin(), row.end(), 0L);
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](CellId a, CellId b) { return row_sum[a] < row_sum[b]; });

    // suffix_[q][i] = min over positions >= q of d(i, order_[q']).
    suffix_.assign(static_cast<std::size_t>(n_ + 1) * n_, kFar);
    for (int q = n_ - 1; q >= 0; --q) {
      const auto row = d_.row(order_[q]);
      for (CellId i = 0; i < n_; ++i) suffix(q, i) = std::min(suffix(q + 1, i), row[i]);
    }
    levels_.assign(m_ + 1, std::vector<int>(n_, kFar));
  }

  void seed_incumbent(std::vector<CellId> set) {
    best_cost_ = set_cost(d_, set);
    best_set_ = std::move(set);
  }

  void run() { dfs(0, 0); }

  long best_cost() const { return best_cost_; }
  const std::vector<CellId>& best_set() const { return best_set_; }
  std::int64_t explored() const { return explored_; }
  std::int64_t pruned() const { return pruned_; }
  bool exhausted() const { return exhausted_; }

 private:
  int& suffix(int q, CellId i) { return suffix_[static_cast<std::size_t>(q) * n_ + i]; }
  int suffix(int q, CellId i) const { return suffix_[static_cast<std::size_t>(q) * n_ + i]; }

  long bound(const std::vector<int>& cur, int q) const {
    long total = 0;
    for (CellId i = 0; i < n_; ++i) total += std::min(cur[i], suffix(q, i));
    return total;
  }

  // Returns false once the budget is spent.
  bool dfs(int p, int k) {
    const auto& cur = levels_[k];
    auto& next = levels_[k + 1];
    const int last = n_ - (m_ - k);
    for (int q = p; q <= last; ++q) {
      // Every remaining sibling draws its gateways from positions >= q.
      if (bound(cur, q) >= best_cost_) {
        ++pruned_;
        break;
      }
      if (++explored_ > budget_) {
        exhausted_ = true;
        return false;
      }
      const auto row = d_.row(order_[q]);
      long total = 0;
      for (CellId i = 0; i < n_; ++i) {
        next[i] = std::min(cur[i], row[i]);
        total += next[i];
      }
      chosen_.push_back(order_[q]);
      if (k + 1 == m_) {
        if (total < best_cost_) {
          best_cost_ = total;
          best_set_ = chosen_;
        }
      } else if (bound(next, q + 1) < best_cost_) {
        if (!dfs(q + 1, k + 1)) return false;
      } else {
        ++pruned_;
      }
      chosen_.pop_back();
    }
    return true;
  }

  const HopMatrix& d_;
  int n_;
  int m_;
  std::int64_t budget_;
  std::vector<CellId> order_;
  std::vector<int> suffix_;
  std::vector<std::vector<int>> levels_;
  std::vector<CellId> chosen_;
  std::vector<CellId> best_set_;
  long best_cost_ = std::numeric_limits<long>::max();
  std::int64_t explored_ = 0;
  std::int64_t pruned_ = 0;
  bool exhausted_ = false;
};

}  // namespace

ExactResult exact_place(const ConnectivityGraph& g, const HopMatrix& d, int m, const ExactOptions& options) {
  if (d.size() != g.n) throw InvalidConfig("hop matrix does not match graph");
  if (m < 1 || m > g.n) throw InvalidConfig(fmt::format("gateway count {} must lie in [1, {}]", m, g.n));

  BranchAndBound bb(d, m, options.node_budget);
  bb.seed_incumbent(interchange_start(d, m));
  bb.run();

  ExactResult r;
  r.placement = assign_to_gateways(g, bb.best_set());
  r.total_hops = bb.best_cost();
  r.certified = !bb.exhausted();
  r.nodes_explored = bb.explored();
  r.nodes_pruned = bb.pruned();
  if (!r.certified) {
    throw BudgetExceeded(
        fmt::format("branch and bound stopped after {} nodes; incumbent total hops {}", options.node_budget, r.total_hops),
        std::move(r));
  }
  return r;
}

ExactResult exact_place(const ConnectivityGraph& g, int m, const ExactOptions& options) {
  return exact_place(g, hop_matrix(g), m, options);
}

}  // namespace gwloc
