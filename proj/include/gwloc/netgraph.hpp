#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gwloc/common.hpp"
#include "gwloc/placement.hpp"

namespace gwloc {

struct Topology;

inline constexpr int kUnreachable = -1;

/// Unit-weight, undirected connectivity graph. Neighbor lists are sorted.
struct ConnectivityGraph {
  int n = 0;
  double transmission_range = 200.0;
  std::vector<std::vector<CellId>> adjacency;

  std::size_t edge_count() const;
  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<std::pair<CellId, CellId>> edges() const;
};

ConnectivityGraph build_graph(std::span<const Point> cells, double range = 200.0);
ConnectivityGraph build_graph(const Topology& topo, double range = 200.0);
/// Builds a graph from an explicit edge list; duplicates and self-loops are dropped.
ConnectivityGraph graph_from_edges(int n, std::span<const std::pair<CellId, CellId>> edges);

/// True iff the graph has exactly one connected component.
bool is_fully_connected(const ConnectivityGraph& g);

struct ShortestPathTree {
  CellId root = -1;
  std::vector<CellId> parent;  // -1 for the root and unreachable cells
  std::vector<int> dist;       // kUnreachable when not reachable
};

/// Breadth-first hop distances from `source` into `dist` (size n).
void bfs_hops(const ConnectivityGraph& g, CellId source, std::span<int> dist);

/// Fewest-hop tree. Among equal-distance predecessors the lowest id is the parent.
ShortestPathTree sssp_hops(const ConnectivityGraph& g, CellId source);

/// Dense all-pairs hop distances, row-major.
class HopMatrix {
 public:
  HopMatrix() = default;
  explicit HopMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  int size() const { return n_; }
  int operator()(CellId i, CellId j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  int& operator()(CellId i, CellId j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const int> row(CellId i) const { return {d_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)}; }
  std::span<int> row(CellId i) { return {d_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)}; }

  friend bool operator==(const HopMatrix&, const HopMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<int> d_;
};

/// All-pairs fewest hops, one BFS per source spread over OpenMP threads.
/// Throws NotConnected if any pair is unreachable.
HopMatrix hop_matrix(const ConnectivityGraph& g);
/// Single-threaded reference for hop_matrix.
HopMatrix hop_matrix_serial(const ConnectivityGraph& g);

/// Multi-source BFS from the gateway set. Each cell goes to its nearest
/// gateway in hops; ties go to the lowest gateway id.
Placement assign_to_gateways(const ConnectivityGraph& g, std::span<const CellId> gateways);

/// Sum of fewest-hop distances to the nearest gateway, or -1 if some cell is
/// unreachable. `scratch` must hold g.n ints.
long total_hops_to_gateways(const ConnectivityGraph& g, std::span<const CellId> gateways,
                            std::span<int> scratch);

}  // namespace gwloc
