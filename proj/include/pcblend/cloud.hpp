// Point-cloud container, unit-cube normalization and seeded perturbation.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pcblend/point.hpp"

namespace pcblend {

struct PointCloud {
  std::vector<Point3> points;

  PointCloud() = default;
  explicit PointCloud(std::vector<Point3> pts) : points(std::move(pts)) {}

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  Point3& operator[](std::size_t i) { return points[i]; }
  const Point3& operator[](std::size_t i) const { return points[i]; }
  auto begin() const { return points.begin(); }
  auto end() const { return points.end(); }

  BoundingBox bounds() const {
    BoundingBox box;
    for (const Point3& p : points) box.expand(p);
    return box;
  }
};

// Maps original coordinates p to normalized coordinates (p - offset) / scale.
struct NormalizationTransform {
  double scale = 1.0;
  Point3 offset{0.0, 0.0, 0.0};

  Point3 apply(const Point3& p) const { return (p - offset) / scale; }
  Point3 invert(const Point3& p) const { return p * scale + offset; }

  PointCloud apply(const PointCloud& c) const {
    PointCloud out;
    out.points.reserve(c.size());
    for (const Point3& p : c) out.points.push_back(apply(p));
    return out;
  }
  PointCloud invert(const PointCloud& c) const {
    PointCloud out;
    out.points.reserve(c.size());
    for (const Point3& p : c) out.points.push_back(invert(p));
    return out;
  }
};

// Uniform (isotropic) scaling into [0,1]^3: the longest bounding-box edge is
// mapped to length 1 and the shorter axes are centered. A degenerate cloud
// (all points identical) lands at the cube center with scale 1.
std::pair<PointCloud, NormalizationTransform> normalize_unit_cube(
    const PointCloud& cloud);

// Adds N(0, sigma^2) noise independently to every coordinate.
PointCloud perturb_gaussian(const PointCloud& cloud, double sigma,
                            std::uint64_t seed);

// Throws invalid_argument (prefixed with `who`) on an empty cloud or any
// non-finite coordinate.
void validate_finite(const PointCloud& cloud, const char* who = "point cloud");

}  // namespace pcblend
