#include "pcblend/cluster.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "pcblend/io.hpp"
#include "pcblend/parallel.hpp"
#include "pcblend/rng.hpp"
#include "pcblend/transport.hpp"

namespace pcblend {
namespace {

void check_balanced_sizes(std::size_t n, std::size_t k, const char* who) {
  if (n == 0) throw std::invalid_argument(std::string(who) + ": empty cloud");
  if (k == 0) throw std::invalid_argument(std::string(who) + ": k must be positive");
  if (n % k != 0) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(n) +
                                " points cannot be split into " +
                                std::to_string(k) + " equal clusters");
  }
}

std::vector<double> assignment_costs(const PointCloud& points,
                                     const std::vector<Point3>& centroids) {
  const std::size_t n = points.size(), k = centroids.size();
  std::vector<double> costs(n * k);
  parallel_for(n, [&](std::size_t i) {
    double* row = costs.data() + i * k;
    for (std::size_t h = 0; h < k; ++h) {
      row[h] = 0.5 * sq_dist(points[i], centroids[h]);
    }
  });
  return costs;
}

std::vector<Point3> kmeanspp_seed(const PointCloud& points, int k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Point3> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng.uniform_index(n)]);

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(points[i], centroids[0]);

  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick;
    if (total > 0.0) {
      const double r = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (r < acc) {
          pick = i;
          break;
        }
      }
    } else {
      // All points already coincide with a centroid; any choice works.
      pick = rng.uniform_index(n);
    }
    centroids.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(points[i], centroids.back()));
    }
  }
  return centroids;
}

std::vector<PointCloud> gather_clusters(const PointCloud& points,
                                        const Assignment& a) {
  std::vector<PointCloud> out(a.cluster_count);
  for (auto& c : out) c.points.reserve(a.cluster_size);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[a.labels[i]].points.push_back(points[i]);
  }
  return out;
}

}  // namespace

Assignment cluster_assignment(const PointCloud& points,
                              const std::vector<Point3>& centroids) {
  check_balanced_sizes(points.size(), centroids.size(), "cluster_assignment");
  const int n = static_cast<int>(points.size());
  const int k = static_cast<int>(centroids.size());
  const int m = n / k;
  auto sol = transport::solve_balanced_transport(
      assignment_costs(points, centroids), n, k, m);
  return Assignment{std::move(sol.labels), k, m};
}

double assignment_cost(const PointCloud& points, const Assignment& assignment,
                       const std::vector<Point3>& centroids) {
  if (assignment.labels.size() != points.size()) {
    throw std::invalid_argument("assignment_cost: label/point count mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += 0.5 * sq_dist(points[i], centroids[assignment.labels[i]]);
  }
  return total;
}

std::vector<Point3> cluster_update(const PointCloud& points,
                                   const Assignment& assignment,
                                   const std::vector<Point3>& previous) {
  if (static_cast<int>(previous.size()) != assignment.cluster_count) {
    throw std::invalid_argument("cluster_update: centroid count mismatch");
  }
  std::vector<Point3> sums(assignment.cluster_count, Point3{});
  std::vector<std::size_t> counts(assignment.cluster_count, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int h = assignment.labels[i];
    sums[h] += points[i];
    ++counts[h];
  }
  std::vector<Point3> next(previous);
  for (int h = 0; h < assignment.cluster_count; ++h) {
    if (counts[h] > 0) next[h] = sums[h] / static_cast<double>(counts[h]);
  }
  return next;
}

ClusterSet constrained_kmeans(const PointCloud& points, int k,
                              std::uint64_t seed, int max_iters, double tol) {
  check_balanced_sizes(points.size(), static_cast<std::size_t>(std::max(k, 0)),
                       "constrained_kmeans");
  validate_finite(points, "constrained_kmeans");
  if (max_iters < 1) {
    throw std::invalid_argument("constrained_kmeans: max_iters must be positive");
  }
  if (!(tol >= 0.0)) {
    throw std::invalid_argument("constrained_kmeans: tol must be non-negative");
  }

  Rng rng(seed);
  std::vector<Point3> centroids = kmeanspp_seed(points, k, rng);

  ClusterSet cs;
  if (k == 1) {
    // Only one feasible assignment, and the mean is the update fixed point.
    cs.assignment = Assignment{std::vector<int>(points.size(), 0), 1,
                               static_cast<int>(points.size())};
    cs.centroids = cluster_update(points, cs.assignment, centroids);
    cs.clusters = gather_clusters(points, cs.assignment);
    cs.iterations = 1;
    cs.objective = assignment_cost(points, cs.assignment, cs.centroids);
    cs.objective_history = {cs.objective};
    return cs;
  }
  for (int iter = 0; iter < max_iters; ++iter) {
    cs.assignment = cluster_assignment(points, centroids);
    cs.iterations = iter + 1;
    cs.objective_history.push_back(
        assignment_cost(points, cs.assignment, centroids));

    std::vector<Point3> next = cluster_update(points, cs.assignment, centroids);
    double movement = 0.0;
    for (int h = 0; h < k; ++h) {
      for (int a = 0; a < 3; ++a) {
        movement = std::max(movement, std::fabs(next[h][a] - centroids[h][a]));
      }
    }
    centroids = std::move(next);
    if (movement <= tol) break;
  }

  cs.centroids = std::move(centroids);
  cs.clusters = gather_clusters(points, cs.assignment);
  cs.objective = assignment_cost(points, cs.assignment, cs.centroids);
  return cs;
}

ClusterSet assign_to_shared_centroids(const PointCloud& points,
                                      const ClusterSet& reference) {
  const std::size_t expected =
      static_cast<std::size_t>(reference.k()) * reference.m();
  if (points.size() != expected) {
    throw std::invalid_argument(
        "assign_to_shared_centroids: cloud has " +
        std::to_string(points.size()) + " points, reference clustering needs " +
        std::to_string(expected));
  }
  validate_finite(points, "assign_to_shared_centroids");

  ClusterSet cs;
  cs.assignment = cluster_assignment(points, reference.centroids);
  cs.centroids = reference.centroids;
  cs.clusters = gather_clusters(points, cs.assignment);
  cs.iterations = 0;
  cs.objective = assignment_cost(points, cs.assignment, cs.centroids);
  cs.objective_history = {cs.objective};
  return cs;
}

void save_cluster_set(const ClusterSet& cs, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names(cs.k());
  for (int h = 0; h < cs.k(); ++h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "cluster_%03d.ply", h);
    names[h] = buf;
    store_cloud(cs.clusters[h], dir / names[h]);
  }

  std::ofstream out(dir / "manifest.txt");
  if (!out) {
    throw std::runtime_error("save_cluster_set: cannot write manifest in " +
                             dir.string());
  }
  char line[256];
  out << "k " << cs.k() << "\n";
  out << "m " << cs.m() << "\n";
  out << "iterations " << cs.iterations << "\n";
  std::snprintf(line, sizeof line, "objective %.17g\n", cs.objective);
  out << line;
  for (int h = 0; h < cs.k(); ++h) {
    std::snprintf(line, sizeof line, "centroid %d %.17g %.17g %.17g\n", h,
                  cs.centroids[h].x, cs.centroids[h].y, cs.centroids[h].z);
    out << line;
  }
  for (int h = 0; h < cs.k(); ++h) {
    out << "cluster " << h << " " << names[h] << "\n";
  }
}

}  // namespace pcblend
