#include "pcblend/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pcblend/parallel.hpp"
#include "pcblend/rng.hpp"

namespace pcblend {

Density::Density(PointCloud cloud, double bandwidth)
    : cloud_(std::move(cloud)), bandwidth_(bandwidth) {
  if (cloud_.empty()) {
    throw std::invalid_argument("Density: cloud must be non-empty");
  }
  validate_finite(cloud_, "Density");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw std::invalid_argument("Density: bandwidth must be positive");
  }
  const double s2 = bandwidth * bandwidth;
  inv_two_s2_ = 1.0 / (2.0 * s2);
  norm_ = 1.0 / (static_cast<double>(cloud_.size()) *
                 std::pow(2.0 * std::numbers::pi * s2, 1.5));
  // exp(-t) is exactly 0.0 for t >= 746 (beyond the smallest denormal), so
  // points outside this radius contribute nothing at all. 760 adds margin
  // for the last-ulp behaviour of libm.
  cutoff_sq_ = 760.0 * 2.0 * s2;
  tree_ = std::make_unique<KdTree3>(cloud_);
}

double Density::evaluate(const Point3& q) const {
  // Kahan summation: the terms span many orders of magnitude.
  double sum = 0.0, comp = 0.0;
  tree_->for_each_within(q, cutoff_sq_, [&](std::size_t, double d2) {
    const double term = std::exp(-d2 * inv_two_s2_);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  });
  return norm_ * sum;
}

std::vector<double> Density::evaluate(const PointCloud& queries) const {
  std::vector<double> out(queries.size());
  parallel_for(queries.size(),
               [&](std::size_t i) { out[i] = evaluate(queries[i]); });
  return out;
}

PointCloud density_subsample(const PointCloud& design, const Density& density,
                             std::size_t count, double noise_sigma,
                             std::uint64_t seed) {
  if (design.empty()) {
    throw std::invalid_argument("density_subsample: design cloud is empty");
  }
  if (count == 0) {
    throw std::invalid_argument("density_subsample: count must be positive");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw std::invalid_argument(
        "density_subsample: noise_sigma must be non-negative");
  }
  validate_finite(design, "density_subsample");

  const std::vector<double> w = density.evaluate(design);
  std::vector<double> cum(w.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += w[i];
    cum[i] = total;
  }
  if (!(total > 0.0)) {
    throw std::runtime_error(
        "density_subsample: the density vanishes on every design point; "
        "increase the bandwidth");
  }

  Rng rng(seed);
  PointCloud out;
  out.points.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double r = rng.uniform() * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), r);
    const std::size_t idx =
        std::min<std::size_t>(it - cum.begin(), design.size() - 1);
    out.points.push_back(design[idx]);
  }
  return perturb_gaussian(out, noise_sigma, derive_seed(seed, 1));
}

PointCloud style_source(const PointCloud& x, const PointCloud& design,
                        double bandwidth, std::uint64_t seed) {
  if (x.empty() || design.empty()) {
    throw std::invalid_argument("style_source: clouds must be non-empty");
  }
  for (const PointCloud* c : {&x, &design}) {
    const BoundingBox b = c->bounds();
    for (int a = 0; a < 3; ++a) {
      if (b.min[a] < -0.1 || b.max[a] > 1.1) {
        throw std::invalid_argument(
            "style_source: clouds must lie in the unit cube (normalize "
            "them first)");
      }
    }
  }
  Density d(x, bandwidth);
  return density_subsample(design, d, x.size(), defaults::style_noise_sigma,
                           seed);
}

}  // namespace pcblend
