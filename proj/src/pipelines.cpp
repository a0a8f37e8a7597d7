#include "pcblend/pipelines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "pcblend/cluster.hpp"
#include "pcblend/kde.hpp"
#include "pcblend/parallel.hpp"

namespace pcblend {
namespace {

void check_pipeline_inputs(const PointCloud& x, const PointCloud& y, int k,
                           const std::vector<double>& lambdas,
                           const char* who) {
  validate_finite(x, who);
  validate_finite(y, who);
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(who) + ": clouds differ in size (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  if (k < 1 || x.size() % static_cast<std::size_t>(k) != 0) {
    throw std::invalid_argument(std::string(who) + ": " +
                                std::to_string(x.size()) +
                                " points cannot be split into " +
                                std::to_string(k) + " equal clusters");
  }
  for (double l : lambdas) {
    if (!(l >= 0.0) || !(l <= 1.0)) {
      throw std::invalid_argument(std::string(who) +
                                  ": lambda must lie in [0, 1], got " +
                                  std::to_string(l));
    }
  }
  for (const PointCloud* c : {&x, &y}) {
    const BoundingBox b = c->bounds();
    for (int a = 0; a < 3; ++a) {
      if (b.min[a] < -0.1 || b.max[a] > 1.1) {
        throw std::invalid_argument(
            std::string(who) +
            ": clouds must lie in the unit cube (normalize them first)");
      }
    }
  }
}

std::vector<PointCloud> concat_training(const ClusterSet& cx,
                                        const ClusterSet& cy) {
  std::vector<PointCloud> training = cx.clusters;
  training.insert(training.end(), cy.clusters.begin(), cy.clusters.end());
  return training;
}

std::shared_ptr<Embedder> make_embedder(const EmbedderFactory& factory,
                                        const std::vector<PointCloud>& training,
                                        std::size_t m, const char* who) {
  if (!factory) {
    throw std::invalid_argument(std::string(who) + ": empty embedder factory");
  }
  std::shared_ptr<Embedder> e = factory(training);
  if (!e) {
    throw std::invalid_argument(std::string(who) +
                                ": the factory produced no embedder");
  }
  if (e->input_size() != m) {
    throw std::invalid_argument(
        std::string(who) + ": embedder expects clusters of " +
        std::to_string(e->input_size()) + " points but clustering produced " +
        std::to_string(m));
  }
  return e;
}

std::vector<PointCloud> blend_paired_clusters(
    const std::vector<PointCloud>& cx, const std::vector<PointCloud>& cy,
    const std::vector<int>& pair_of, const Embedder& embedder,
    const std::vector<double>& lambdas) {
  const std::size_t k = cx.size();
  const std::size_t m = embedder.input_size();
  // Per-cluster blends are independent; merge afterwards in cluster order so
  // the result does not depend on the worker count.
  std::vector<std::vector<PointCloud>> per_cluster(k);
  parallel_tasks(k, [&](std::size_t h) {
    per_cluster[h] = embedder.blend_many(cx[h], cy[pair_of[h]], lambdas);
  });
  std::vector<PointCloud> out(lambdas.size());
  for (auto& c : out) c.points.reserve(k * m);
  for (std::size_t h = 0; h < k; ++h) {
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      out[l].points.insert(out[l].points.end(),
                           per_cluster[h][l].points.begin(),
                           per_cluster[h][l].points.end());
    }
  }
  return out;
}

std::vector<int> identity_pairs(int k) {
  std::vector<int> p(k);
  for (int h = 0; h < k; ++h) p[h] = h;
  return p;
}

}  // namespace

std::vector<PointCloud> blend_pipeline_sweep(
    const PointCloud& x, const PointCloud& y,
    const std::vector<double>& lambdas, int k, const EmbedderFactory& factory,
    std::uint64_t seed) {
  check_pipeline_inputs(x, y, k, lambdas, "blend_pipeline");
  const ClusterSet cx = constrained_kmeans(x, k, seed);
  const ClusterSet cy = assign_to_shared_centroids(y, cx);
  const auto embedder =
      make_embedder(factory, concat_training(cx, cy), cx.m(), "blend_pipeline");
  return blend_paired_clusters(cx.clusters, cy.clusters, identity_pairs(k),
                               *embedder, lambdas);
}

PointCloud blend_pipeline(const PointCloud& x, const PointCloud& y,
                          double lambda, int k, const EmbedderFactory& factory,
                          std::uint64_t seed) {
  return std::move(blend_pipeline_sweep(x, y, {lambda}, k, factory, seed)[0]);
}

std::vector<PointCloud> style_transfer_sweep(
    const PointCloud& x, const PointCloud& design,
    const std::vector<double>& lambdas, int k, const EmbedderFactory& factory,
    double bandwidth, std::uint64_t seed) {
  const PointCloud style = style_source(x, design, bandwidth, seed);
  return blend_pipeline_sweep(x, style, lambdas, k, factory, seed);
}

PointCloud style_transfer_pipeline(const PointCloud& x,
                                   const PointCloud& design, double lambda,
                                   int k, const EmbedderFactory& factory,
                                   double bandwidth, std::uint64_t seed) {
  return std::move(
      style_transfer_sweep(x, design, {lambda}, k, factory, bandwidth, seed)[0]);
}

PointCloud naive_match_blend(const PointCloud& x, const PointCloud& y,
                             double lambda, int k,
                             const EmbedderFactory& factory,
                             std::uint64_t seed_x, std::uint64_t seed_y) {
  check_pipeline_inputs(x, y, k, {lambda}, "naive_match_blend");
  const ClusterSet cx = constrained_kmeans(x, k, seed_x);
  const ClusterSet cy = constrained_kmeans(y, k, seed_y);

  // Greedy centroid matching without replacement, in cluster order; ties go
  // to the lower index.
  std::vector<int> pair_of(k, -1);
  std::vector<char> used(k, 0);
  for (int h = 0; h < k; ++h) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      if (used[j]) continue;
      const double d = sq_dist(cx.centroids[h], cy.centroids[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    pair_of[h] = best;
    used[best] = 1;
  }

  const auto embedder = make_embedder(factory, concat_training(cx, cy),
                                      cx.m(), "naive_match_blend");
  return std::move(blend_paired_clusters(cx.clusters, cy.clusters, pair_of,
                                         *embedder, {lambda})[0]);
}

}  // namespace pcblend
