#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcblend/cloud.hpp"

namespace pcblend {

// ---- surface shapes (training-set families) ----

enum class ShapeKind { spheres, cuboids, planes, lattice };

std::string to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(const std::string& name);

struct ShapeParams {
  // spheres / cuboids: number of nested (encapsulated) shells.
  int shells = 2;
  // planes: number of axis-aligned planes (normals cycle x, y, z).
  int planes = 3;
  // lattice: nominal cell size in (0, 1] and strut half-width. The grid is
  // inset by the strut half-width so every strut stays inside the cube.
  double pitch = 0.25;
  double strut_radius = 0.02;
};

// Uniform area-weighted samples on the composite surface; result lies in
// [0,1]^3 and is deterministic under (kind, points, params, seed).
PointCloud gen_shape(ShapeKind kind, std::size_t points,
                     const ShapeParams& params, std::uint64_t seed);

// ---- volumetric designs ----

enum class DesignKind { stripes, porous, cuts };

std::string to_string(DesignKind kind);
DesignKind design_kind_from_string(const std::string& name);

struct DesignParams {
  // stripes: slabs of `thickness` repeating with `period` along z, the slab
  // boundary zig-zags along x. Kept volume fraction is exactly
  // thickness/period when 1/period is an integer.
  double period = 0.25;
  double thickness = 0.1;

  // porous: spherical voids. Explicit lists win; otherwise `voids` balls are
  // drawn from the seed. voids == 0 with empty lists is the solid cube.
  std::vector<Point3> void_centers;
  std::vector<double> void_radii;
  int voids = 6;

  // cuts: planar slits of width cut_width. Explicit lists win; otherwise
  // `cuts` slits are drawn from the seed.
  std::vector<int> cut_axes;
  std::vector<double> cut_positions;
  double cut_width = 0.04;
  int cuts = 3;
};

PointCloud gen_design(DesignKind kind, std::size_t points,
                      const DesignParams& params, std::uint64_t seed);

// ---- corpus generation ----

struct GeneratedCloud {
  ShapeKind kind;
  ShapeParams params;
  std::uint64_t seed;  // the per-cloud sampling seed
  PointCloud cloud;
};

// Round-robin over the four shape kinds with per-cloud randomized params;
// every cloud's seed derives from the master seed, so the corpus is
// reproducible as a whole.
std::vector<GeneratedCloud> gen_dataset(std::size_t count,
                                        std::size_t points_per_cloud,
                                        std::uint64_t seed);

}  // namespace pcblend
