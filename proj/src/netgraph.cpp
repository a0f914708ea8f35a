#include "gwloc/netgraph.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "gwloc/topogen.hpp"

namespace gwloc {

std::size_t ConnectivityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacency) twice += nbrs.size();
  return twice / 2;
}

std::vector<std::pair<CellId, CellId>> ConnectivityGraph::edges() const {
  std::vector<std::pair<CellId, CellId>> out;
  out.reserve(edge_count());
  for (CellId i = 0; i < n; ++i) {
    for (CellId j : adjacency[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

ConnectivityGraph build_graph(std::span<const Point> cells, double range) {
  ConnectivityGraph g;
  g.n = static_cast<int>(cells.size());
  g.transmission_range = range;
  g.adjacency.assign(g.n, {});
  const double range2 = range * range;
  for (CellId i = 0; i < g.n; ++i) {
    for (CellId j = i + 1; j < g.n; ++j) {
      if (squared_distance(cells[i], cells[j]) <= range2) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  // j ascends in the inner loop and i ascends in the outer one, so lists are already sorted.
  return g;
}

ConnectivityGraph build_graph(const Topology& topo, double range) { return build_graph(topo.cells, range); }

ConnectivityGraph graph_from_edges(int n, std::span<const std::pair<CellId, CellId>> edges) {
  ConnectivityGraph g;
  g.n = n;
  g.transmission_range = 0.0;
  g.adjacency.assign(n, {});
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidConfig(fmt::format("edge ({}, {}) out of range", i, j));
    if (i == j) continue;
    g.adjacency[i].push_back(j);
    g.adjacency[j].push_back(i);
  }
  for (auto& nbrs : g.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

void bfs_hops(const ConnectivityGraph& g, CellId source, std::span<int> dist) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  std::vector<CellId> queue;
  queue.reserve(g.n);
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const CellId u = queue[head];
    const int next = dist[u] + 1;
    for (CellId v : g.adjacency[u]) {
      if (dist[v] == kUnreachable) {
        dist[v] = next;
        queue.push_back(v);
      }
    }
  }
}

bool is_fully_connected(const ConnectivityGraph& g) {
  if (g.n == 0) return false;
  std::vector<int> dist(g.n);
  bfs_hops(g, 0, dist);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; });
}

ShortestPathTree sssp_hops(const ConnectivityGraph& g, CellId source) {
  ShortestPathTree tree;
  tree.root = source;
  tree.dist.resize(g.n);
  bfs_hops(g, source, tree.dist);
  tree.parent.assign(g.n, -1);
  for (CellId v = 0; v < g.n; ++v) {
    if (v == source || tree.dist[v] == kUnreachable) continue;
    // Neighbor lists are sorted, so the first hit is the lowest-id predecessor.
    for (CellId u : g.adjacency[v]) {
      if (tree.dist[u] == tree.dist[v] - 1) {
        tree.parent[v] = u;
        break;
      }
    }
  }
  return tree;
}

namespace {

void require_connected_row(std::span<const int> row, CellId source) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == kUnreachable)
      throw NotConnected(fmt::format("cell {} cannot reach cell {}", source, j));
  }
}

}  // namespace

HopMatrix hop_matrix_serial(const ConnectivityGraph& g) {
  HopMatrix d(g.n);
  for (CellId s = 0; s < g.n; ++s) {
    bfs_hops(g, s, d.row(s));
    require_connected_row(d.row(s), s);
  }
  return d;
}

HopMatrix hop_matrix(const ConnectivityGraph& g) {
  HopMatrix d(g.n);
#pragma omp parallel for schedule(dynamic, 8)
  for (CellId s = 0; s < g.n; ++s) bfs_hops(g, s, d.row(s));
  for (CellId s = 0; s < g.n; ++s) require_connected_row(d.row(s), s);
  return d;
}

Placement assign_to_gateways(const ConnectivityGraph& g, std::span<const CellId> gateways) {
  if (gateways.empty()) throw InvalidConfig("gateway set is empty");
  Placement p;
  p.gateways.assign(gateways.begin(), gateways.end());
  std::sort(p.gateways.begin(), p.gateways.end());
  if (std::adjacent_find(p.gateways.begin(), p.gateways.end()) != p.gateways.end())
    throw InvalidConfig("gateway ids must be distinct");
  if (p.gateways.front() < 0 || p.gateways.back() >= g.n)
    throw InvalidConfig(fmt::format("gateway id out of range [0, {})", g.n));

  p.hops.assign(g.n, kUnreachable);
  p.assignment.assign(g.n, -1);
  std::vector<CellId> queue;
  queue.reserve(g.n);
  for (CellId gw : p.gateways) {
    p.hops[gw] = 0;
    p.assignment[gw] = gw;
    queue.push_back(gw);
  }
  // FIFO order finishes a whole level before the next one is expanded, so by
  // the time a cell is dequeued its owner has already been lowered to the
  // smallest gateway id among its equal-distance predecessors.
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const CellId u = queue[head];
    const int next = p.hops[u] + 1;
    for (CellId v : g.adjacency[u]) {
      if (p.hops[v] == kUnreachable) {
        p.hops[v] = next;
        p.assignment[v] = p.assignment[u];
        queue.push_back(v);
      } else if (p.hops[v] == next && p.assignment[u] < p.assignment[v]) {
        p.assignment[v] = p.assignment[u];
      }
    }
  }
  for (CellId v = 0; v < g.n; ++v) {
    if (p.hops[v] == kUnreachable) throw NotConnected(fmt::format("cell {} cannot reach any gateway", v));
  }
  return p;
}

long total_hops_to_gateways(const ConnectivityGraph& g, std::span<const CellId> gateways,
                            std::span<int> scratch) {
  std::fill(scratch.begin(), scratch.end(), kUnreachable);
  thread_local std::vector<CellId> queue;
  queue.clear();
  queue.reserve(g.n);
  for (CellId gw : gateways) {
    if (scratch[gw] == kUnreachable) {
      scratch[gw] = 0;
      queue.push_back(gw);
    }
  }
  long total = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const CellId u = queue[head];
    const int next = scratch[u] + 1;
    for (CellId v : g.adjacency[u]) {
      if (scratch[v] == kUnreachable) {
        scratch[v] = next;
        total += next;
        queue.push_back(v);
      }
    }
  }
  if (static_cast<int>(queue.size()) != g.n) return -1;
  return total;
}

}  // namespace gwloc
