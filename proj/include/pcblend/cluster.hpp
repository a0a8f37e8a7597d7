#pragma once

#include <filesystem>
#include <vector>

#include "pcblend/cloud.hpp"
#include "pcblend/defaults.hpp"

namespace pcblend {

// A balanced hard assignment: every cluster holds exactly cluster_size points.
struct Assignment {
  std::vector<int> labels;
  int cluster_count = 0;
  int cluster_size = 0;
};

struct ClusterSet {
  std::vector<PointCloud> clusters;  // points keep their original order
  std::vector<Point3> centroids;
  Assignment assignment;
  int iterations = 0;
  double objective = 0.0;  // cost of `assignment` against `centroids`
  std::vector<double> objective_history;

  int k() const { return assignment.cluster_count; }
  int m() const { return assignment.cluster_size; }
};

// One assignment step: the optimal balanced labeling for fixed centroids,
// cost(i, h) = 0.5 * |x_i - c_h|^2. Requires points.size() == k * m.
Assignment cluster_assignment(const PointCloud& points,
                              const std::vector<Point3>& centroids);

// Cost of an assignment against a set of centroids (sum over points in order).
double assignment_cost(const PointCloud& points, const Assignment& assignment,
                       const std::vector<Point3>& centroids);

// One update step: each centroid moves to the mean of its cluster; a cluster
// that received no points keeps its previous centroid.
std::vector<Point3> cluster_update(const PointCloud& points,
                                   const Assignment& assignment,
                                   const std::vector<Point3>& previous);

// Balanced k-means: k-means++ seeding from `seed`, then alternate the two
// steps above until no centroid coordinate moves by more than `tol` or
// `max_iters` assignment rounds have run.
ClusterSet constrained_kmeans(const PointCloud& points, int k,
                              std::uint64_t seed = defaults::seed,
                              int max_iters = defaults::kmeans_max_iters,
                              double tol = defaults::kmeans_tol);

// Partition `points` with the centroids of an existing clustering so the two
// cluster sets correspond index-for-index. No update step runs.
ClusterSet assign_to_shared_centroids(const PointCloud& points,
                                      const ClusterSet& reference);

// Writes cluster_NNN.ply files plus a manifest.txt into `dir`.
void save_cluster_set(const ClusterSet& cs, const std::filesystem::path& dir);

}  // namespace pcblend
