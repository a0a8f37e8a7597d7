#pragma once

#include <cstdint>
#include <vector>

#include "pcblend/cloud.hpp"
#include "pcblend/defaults.hpp"
#include "pcblend/embed.hpp"

namespace pcblend {

// Cluster-aligned blending. x is clustered with balanced k-means, y is
// partitioned against the same centroids, the embedder (built from the 2k
// cluster clouds) blends corresponding clusters, and the blends concatenate
// in cluster order. Inputs must be equal-size, divisible by k, and live in
// (roughly) the unit cube — normalize first.
PointCloud blend_pipeline(const PointCloud& x, const PointCloud& y,
                          double lambda, int k, const EmbedderFactory& factory,
                          std::uint64_t seed = defaults::seed);

// Same, for several lambdas at once; clustering and embedder fitting run a
// single time and pair matchings are shared across the sweep.
std::vector<PointCloud> blend_pipeline_sweep(
    const PointCloud& x, const PointCloud& y,
    const std::vector<double>& lambdas, int k, const EmbedderFactory& factory,
    std::uint64_t seed = defaults::seed);

// Style transfer: build the style-matched stand-in of x from the design via
// density subsampling, then blend x towards it. lambda = 1 returns x's
// geometry; lambda = 0 returns the stand-in (pure design style).
PointCloud style_transfer_pipeline(const PointCloud& x,
                                   const PointCloud& design, double lambda,
                                   int k, const EmbedderFactory& factory,
                                   double bandwidth = defaults::kde_bandwidth,
                                   std::uint64_t seed = defaults::seed);

std::vector<PointCloud> style_transfer_sweep(
    const PointCloud& x, const PointCloud& design,
    const std::vector<double>& lambdas, int k, const EmbedderFactory& factory,
    double bandwidth = defaults::kde_bandwidth,
    std::uint64_t seed = defaults::seed);

// The ablation of the shared-centroid step: x and y are clustered
// independently (with their own seeds) and clusters are paired greedily by
// centroid distance. With clusterings that disagree this tears the
// interpolation apart; it exists to demonstrate that failure.
PointCloud naive_match_blend(const PointCloud& x, const PointCloud& y,
                             double lambda, int k,
                             const EmbedderFactory& factory,
                             std::uint64_t seed_x = defaults::seed,
                             std::uint64_t seed_y = defaults::seed);

}  // namespace pcblend
