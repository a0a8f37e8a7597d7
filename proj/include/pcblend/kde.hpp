#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pcblend/cloud.hpp"
#include "pcblend/defaults.hpp"
#include "pcblend/kdtree.hpp"

namespace pcblend {

// Isotropic Gaussian kernel density estimate over a fixed cloud:
//   d(q) = 1/n * sum_i (2 pi s^2)^(-3/2) exp(-|q - x_i|^2 / (2 s^2)).
// Evaluation walks a kd-tree and skips only points whose kernel term
// underflows to exactly 0.0, so pruning itself introduces no error; the sum
// is compensated.
class Density {
 public:
  Density(PointCloud cloud, double bandwidth);

  double evaluate(const Point3& q) const;
  std::vector<double> evaluate(const PointCloud& queries) const;

  double bandwidth() const { return bandwidth_; }
  const PointCloud& cloud() const { return cloud_; }

 private:
  PointCloud cloud_;
  double bandwidth_;
  double inv_two_s2_;
  double norm_;
  double cutoff_sq_;
  std::unique_ptr<KdTree3> tree_;
};

// Draw `count` points from `design` with replacement, proportionally to
// `density`, then add isotropic Gaussian jitter of width noise_sigma.
PointCloud density_subsample(const PointCloud& design, const Density& density,
                             std::size_t count, double noise_sigma,
                             std::uint64_t seed);

// The style-matched stand-in for x: a |x|-point density-weighted subsample
// of the design. Both clouds are expected in (roughly) the unit cube.
PointCloud style_source(const PointCloud& x, const PointCloud& design,
                        double bandwidth = defaults::kde_bandwidth,
                        std::uint64_t seed = defaults::seed);

}  // namespace pcblend
