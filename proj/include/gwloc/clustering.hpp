#pragma once

#include <span>
#include <vector>

#include "gwloc/common.hpp"

namespace gwloc {

struct KMeansResult {
  std::vector<Point> centroids;
  std::vector<int> labels;  // cluster index per point
  double sse = 0.0;         // within-cluster total squared distance
  int iterations = 0;
};

inline constexpr int kKMeansMaxIterations = 300;

/// One Lloyd run from k distinct points chosen at random as initial centroids.
/// An empty cluster is reseeded with the point farthest from its centroid.
KMeansResult kmeans_once(std::span<const Point> points, int k, Rng& rng,
                         int max_iterations = kKMeansMaxIterations);

/// Best (lowest SSE) of `replications` independent runs.
KMeansResult kmeans(std::span<const Point> points, int k, int replications, Rng& rng);

struct KMedoidsResult {
  std::vector<CellId> medoids;  // in slot order, not sorted
  std::vector<int> labels;      // slot index per point
  double cost = 0.0;            // sum of squared distances to the serving medoid
};

/// Random initial medoids, then best-improvement swaps until no swap lowers
/// the cost. Swap deltas are evaluated for all k removals in one pass per
/// candidate, so a full sweep costs O(n^2).
KMedoidsResult kmedoids_once(std::span<const Point> points, int k, Rng& rng);
KMedoidsResult kmedoids(std::span<const Point> points, int k, int replications, Rng& rng);

/// Sum over points of squared distance to the nearest medoid.
double medoid_cost(std::span<const Point> points, std::span<const CellId> medoids);

/// The t points closest to `target`, nearest first, ties broken by lower id.
std::vector<CellId> nearest_cells(std::span<const Point> points, const Point& target, int t);

/// Nearest point to each target in order; a target whose nearest point was
/// already taken gets its next-nearest free point.
std::vector<CellId> snap_to_cells(std::span<const Point> points, std::span<const Point> targets);

}  // namespace gwloc
