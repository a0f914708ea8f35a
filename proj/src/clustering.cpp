#include "gwloc/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace gwloc {

namespace {

void check_k(std::span<const Point> points, int k) {
  if (k < 1 || k > static_cast<int>(points.size()))
    throw InvalidConfig(fmt::format("cluster count {} must lie in [1, {}]", k, points.size()));
}

std::vector<CellId> sample_distinct(int n, int k, Rng& rng) {
  std::vector<CellId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  // Partial Fisher-Yates.
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  ids.resize(k);
  return ids;
}

int nearest_centroid(const Point& p, std::span<const Point> centroids) {
  int best = 0;
  double best_d = squared_distance(p, centroids[0]);
  for (int c = 1; c < static_cast<int>(centroids.size()); ++c) {
    const double d = squared_distance(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

KMeansResult kmeans_once(std::span<const Point> points, int k, Rng& rng, int max_iterations) {
  check_k(points, k);
  const int n = static_cast<int>(points.size());
  KMeansResult r;
  for (CellId id : sample_distinct(n, k, rng)) r.centroids.push_back(points[id]);
  r.labels.assign(n, -1);

  std::vector<int> counts(k);
  std::vector<Point> sums(k);
  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const int c = nearest_centroid(points[i], r.centroids);
      if (c != r.labels[i]) {
        r.labels[i] = c;
        changed = true;
      }
    }

    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) ++counts[r.labels[i]];
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[r.labels[i]] < 2) continue;
        const double d = squared_distance(points[i], r.centroids[r.labels[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      // k <= n guarantees some cluster holds two or more points here.
      --counts[r.labels[far]];
      r.labels[far] = c;
      counts[c] = 1;
      changed = true;
    }
    if (!changed) break;

    std::fill(sums.begin(), sums.end(), Point{});
    for (int i = 0; i < n; ++i) {
      sums[r.labels[i]].x += points[i].x;
      sums[r.labels[i]].y += points[i].y;
    }
    for (int c = 0; c < k; ++c) r.centroids[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
  }

  r.sse = 0.0;
  for (int i = 0; i < n; ++i) r.sse += squared_distance(points[i], r.centroids[r.labels[i]]);
  return r;
}

KMeansResult kmeans(std::span<const Point> points, int k, int replications, Rng& rng) {
  if (replications < 1) throw InvalidConfig("k-means needs at least one replication");
  KMeansResult best = kmeans_once(points, k, rng);
  for (int rep = 1; rep < replications; ++rep) {
    KMeansResult r = kmeans_once(points, k, rng);
    if (r.sse < best.sse) best = std::move(r);
  }
  return best;
}

double medoid_cost(std::span<const Point> points, std::span<const CellId> medoids) {
  double cost = 0.0;
  for (const Point& p : points) {
    double best = std::numeric_limits<double>::infinity();
    for (CellId m : medoids) best = std::min(best, squared_distance(p, points[m]));
    cost += best;
  }
  return cost;
}

namespace {

class SquaredDistances {
 public:
  explicit SquaredDistances(std::span<const Point> points)
      : n_(static_cast<int>(points.size())), d_(static_cast<std::size_t>(n_) * n_) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) d_[static_cast<std::size_t>(i) * n_ + j] = squared_distance(points[i], points[j]);
  }
  double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_;
  std::vector<double> d_;
};

KMedoidsResult pam_swap(const SquaredDistances& dist, int n, std::vector<CellId> medoids) {
  const int k = static_cast<int>(medoids.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<char> is_medoid(n, 0);
  for (CellId m : medoids) is_medoid[m] = 1;

  std::vector<int> nearest(n);
  std::vector<double> d_near(n), d_second(n), delta(k);
  KMedoidsResult r;
  for (;;) {
    double cost = 0.0;
    for (int o = 0; o < n; ++o) {
      int best = -1;
      double b1 = kInf, b2 = kInf;
      for (int s = 0; s < k; ++s) {
        const double d = dist(o, medoids[s]);
        if (d < b1) {
          b2 = b1;
          b1 = d;
          best = s;
        } else if (d < b2) {
          b2 = d;
        }
      }
      nearest[o] = best;
      d_near[o] = b1;
      d_second[o] = b2;
      cost += b1;
    }

    double best_delta = 0.0;
    int best_slot = -1;
    CellId best_h = -1;
    for (CellId h = 0; h < n; ++h) {
      if (is_medoid[h]) continue;
      std::fill(delta.begin(), delta.end(), 0.0);
      double shared = 0.0;
      for (int o = 0; o < n; ++o) {
        const double doh = dist(o, h);
        if (doh < d_near[o]) {
          // o moves to h whichever medoid leaves.
          shared += doh - d_near[o];
        } else {
          // Only losing o's own medoid matters.
          delta[nearest[o]] += std::min(doh, d_second[o]) - d_near[o];
        }
      }
      for (int s = 0; s < k; ++s) {
        const double total = shared + delta[s];
        if (total < best_delta) {
          best_delta = total;
          best_slot = s;
          best_h = h;
        }
      }
    }

    // Relative threshold keeps rounding noise from cycling the swap loop.
    if (best_slot < 0 || best_delta > -1e-12 * (cost + 1.0)) {
      r.medoids = std::move(medoids);
      r.labels = nearest;
      r.cost = cost;
      return r;
    }
    is_medoid[medoids[best_slot]] = 0;
    is_medoid[best_h] = 1;
    medoids[best_slot] = best_h;
  }
}

}  // namespace

KMedoidsResult kmedoids_once(std::span<const Point> points, int k, Rng& rng) {
  check_k(points, k);
  SquaredDistances dist(points);
  const int n = static_cast<int>(points.size());
  return pam_swap(dist, n, sample_distinct(n, k, rng));
}

KMedoidsResult kmedoids(std::span<const Point> points, int k, int replications, Rng& rng) {
  check_k(points, k);
  if (replications < 1) throw InvalidConfig("k-medoids needs at least one replication");
  SquaredDistances dist(points);
  const int n = static_cast<int>(points.size());
  KMedoidsResult best = pam_swap(dist, n, sample_distinct(n, k, rng));
  for (int rep = 1; rep < replications; ++rep) {
    KMedoidsResult r = pam_swap(dist, n, sample_distinct(n, k, rng));
    if (r.cost < best.cost) best = std::move(r);
  }
  return best;
}

std::vector<CellId> nearest_cells(std::span<const Point> points, const Point& target, int t) {
  const int n = static_cast<int>(points.size());
  t = std::min(t, n);
  std::vector<CellId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  auto closer = [&](CellId a, CellId b) {
    const double da = squared_distance(points[a], target);
    const double db = squared_distance(points[b], target);
    return da < db || (da == db && a < b);
  };
  std::partial_sort(ids.begin(), ids.begin() + t, ids.end(), closer);
  ids.resize(t);
  return ids;
}

std::vector<CellId> snap_to_cells(std::span<const Point> points, std::span<const Point> targets) {
  if (targets.size() > points.size())
    throw InvalidConfig(fmt::format("cannot snap {} targets onto {} cells", targets.size(), points.size()));
  std::vector<char> taken(points.size(), 0);
  std::vector<CellId> out;
  out.reserve(targets.size());
  for (const Point& target : targets) {
    for (CellId id : nearest_cells(points, target, static_cast<int>(points.size()))) {
      if (!taken[id]) {
        taken[id] = 1;
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

}  // namespace gwloc
