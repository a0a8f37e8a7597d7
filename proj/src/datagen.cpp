#include "pcblend/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "pcblend/parallel.hpp"
#include "pcblend/rng.hpp"

namespace pcblend {
namespace {

constexpr Point3 kCenter{0.5, 0.5, 0.5};

Point3 unit_direction(Rng& rng) {
  while (true) {
    const Point3 v{rng.normal(), rng.normal(), rng.normal()};
    const double n = norm(v);
    if (n > 1e-12) return v / n;
  }
}

// Draw an index proportionally to the given non-negative weights.
std::size_t weighted_index(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double r = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

PointCloud gen_spheres(std::size_t points, const ShapeParams& params,
                       Rng& rng) {
  if (params.shells < 1) {
    throw std::invalid_argument("gen_shape: shells must be positive");
  }
  const int s = params.shells;
  std::vector<double> radii(s), weights(s);
  for (int i = 0; i < s; ++i) {
    radii[i] = 0.4 * (i + 1) / s;        // outermost shell radius 0.4
    weights[i] = radii[i] * radii[i];    // area ~ r^2
  }
  PointCloud out;
  out.points.reserve(points);
  for (std::size_t p = 0; p < points; ++p) {
    const double r = radii[weighted_index(weights, rng)];
    out.points.push_back(kCenter + r * unit_direction(rng));
  }
  return out;
}

struct Face {
  int axis;       // normal axis
  double plane;   // coordinate on that axis
  Point3 lo, hi;  // rectangle bounds on the two other axes (entries on axis unused)
  double area;
};

PointCloud sample_faces(std::size_t points, const std::vector<Face>& faces,
                        Rng& rng) {
  std::vector<double> weights(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) weights[i] = faces[i].area;
  PointCloud out;
  out.points.reserve(points);
  for (std::size_t p = 0; p < points; ++p) {
    const Face& f = faces[weighted_index(weights, rng)];
    Point3 q;
    for (int a = 0; a < 3; ++a) {
      q[a] = a == f.axis ? f.plane : rng.uniform(f.lo[a], f.hi[a]);
    }
    out.points.push_back(q);
  }
  return out;
}

void add_box_faces(std::vector<Face>& faces, const Point3& lo,
                   const Point3& hi) {
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    const double area = (hi[u] - lo[u]) * (hi[v] - lo[v]);
    faces.push_back({axis, lo[axis], lo, hi, area});
    faces.push_back({axis, hi[axis], lo, hi, area});
  }
}

PointCloud gen_cuboids(std::size_t points, const ShapeParams& params,
                       Rng& rng) {
  if (params.shells < 1) {
    throw std::invalid_argument("gen_shape: shells must be positive");
  }
  const int s = params.shells;
  // Nested cuboids with slightly different aspect per axis, largest one
  // spanning [0.1, 0.9] in x.
  std::vector<Face> faces;
  for (int i = 1; i <= s; ++i) {
    const double f = static_cast<double>(i) / s;
    const Point3 half{0.4 * f, 0.34 * f, 0.28 * f};
    add_box_faces(faces, kCenter - half, kCenter + half);
  }
  return sample_faces(points, faces, rng);
}

PointCloud gen_planes(std::size_t points, const ShapeParams& params,
                      Rng& rng) {
  if (params.planes < 1) {
    throw std::invalid_argument("gen_shape: planes must be positive");
  }
  // Full-cube cross sections; normals cycle through x, y, z so consecutive
  // planes intersect orthogonally. Positions are drawn once up front.
  std::vector<Face> faces;
  for (int i = 0; i < params.planes; ++i) {
    const int axis = i % 3;
    const double pos = rng.uniform(0.15, 0.85);
    faces.push_back({axis, pos, Point3{0, 0, 0}, Point3{1, 1, 1}, 1.0});
  }
  return sample_faces(points, faces, rng);
}

PointCloud gen_lattice(std::size_t points, const ShapeParams& params,
                       Rng& rng) {
  if (!(params.pitch > 0.0) || params.pitch > 1.0) {
    throw std::invalid_argument("gen_shape: lattice pitch must be in (0, 1]");
  }
  const double w = params.strut_radius;
  if (!(w > 0.0) || w >= params.pitch / 4.0) {
    throw std::invalid_argument(
        "gen_shape: strut_radius must be positive and below pitch/4");
  }
  const int cells = std::max(1, static_cast<int>(1.0 / params.pitch + 1e-9));
  const double lo = w, hi = 1.0 - w;          // inset so struts stay inside
  const double step = (hi - lo) / cells;

  // Struts are slim boxes along each axis through every grid intersection.
  std::vector<Face> faces;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    for (int j = 0; j <= cells; ++j) {
      for (int l = 0; l <= cells; ++l) {
        Point3 blo, bhi;
        blo[axis] = lo;
        bhi[axis] = hi;
        blo[u] = lo + j * step - w;
        bhi[u] = lo + j * step + w;
        blo[v] = lo + l * step - w;
        bhi[v] = lo + l * step + w;
        for (int a = 0; a < 3; ++a) {
          blo[a] = std::max(0.0, blo[a]);
          bhi[a] = std::min(1.0, bhi[a]);
        }
        add_box_faces(faces, blo, bhi);
      }
    }
  }
  return sample_faces(points, faces, rng);
}

bool stripes_keep(const Point3& q, double period, double thickness) {
  // Zig-zag shift of the slab pattern along x: triangle wave with period
  // 0.5 and amplitude period/2.
  double f = q.x / 0.5;
  f -= std::floor(f);
  const double tri = f < 0.5 ? 4.0 * f - 1.0 : 3.0 - 4.0 * f;  // in [-1, 1]
  const double r = q.z - 0.5 * period * tri;
  const double m = r - period * std::floor(r / period);
  return m < thickness;
}

PointCloud rejection_sample(std::size_t points, Rng& rng,
                            const std::function<bool(const Point3&)>& keep) {
  PointCloud out;
  out.points.reserve(points);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 10000 * points + 100000;
  while (out.size() < points) {
    if (++attempts > max_attempts) {
      throw std::runtime_error(
          "gen_design: rejection sampling made no progress (the kept volume "
          "is empty or nearly so)");
    }
    const Point3 q{rng.uniform(), rng.uniform(), rng.uniform()};
    if (keep(q)) out.points.push_back(q);
  }
  return out;
}

}  // namespace

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::spheres: return "spheres";
    case ShapeKind::cuboids: return "cuboids";
    case ShapeKind::planes: return "planes";
    case ShapeKind::lattice: return "lattice";
  }
  return "unknown";
}

ShapeKind shape_kind_from_string(const std::string& name) {
  if (name == "spheres") return ShapeKind::spheres;
  if (name == "cuboids") return ShapeKind::cuboids;
  if (name == "planes") return ShapeKind::planes;
  if (name == "lattice") return ShapeKind::lattice;
  throw std::invalid_argument("unknown shape kind: " + name);
}

std::string to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::stripes: return "stripes";
    case DesignKind::porous: return "porous";
    case DesignKind::cuts: return "cuts";
  }
  return "unknown";
}

DesignKind design_kind_from_string(const std::string& name) {
  if (name == "stripes") return DesignKind::stripes;
  if (name == "porous") return DesignKind::porous;
  if (name == "cuts") return DesignKind::cuts;
  throw std::invalid_argument("unknown design kind: " + name);
}

PointCloud gen_shape(ShapeKind kind, std::size_t points,
                     const ShapeParams& params, std::uint64_t seed) {
  if (points == 0) {
    throw std::invalid_argument("gen_shape: points must be positive");
  }
  Rng rng(seed);
  switch (kind) {
    case ShapeKind::spheres: return gen_spheres(points, params, rng);
    case ShapeKind::cuboids: return gen_cuboids(points, params, rng);
    case ShapeKind::planes: return gen_planes(points, params, rng);
    case ShapeKind::lattice: return gen_lattice(points, params, rng);
  }
  throw std::invalid_argument("gen_shape: unknown kind");
}

PointCloud gen_design(DesignKind kind, std::size_t points,
                      const DesignParams& params, std::uint64_t seed) {
  if (points == 0) {
    throw std::invalid_argument("gen_design: points must be positive");
  }
  Rng rng(seed);

  if (kind == DesignKind::stripes) {
    if (!(params.period > 0.0) || params.period > 1.0) {
      throw std::invalid_argument("gen_design: period must be in (0, 1]");
    }
    if (!(params.thickness > 0.0) || params.thickness > params.period) {
      throw std::invalid_argument(
          "gen_design: thickness must be in (0, period]");
    }
    return rejection_sample(points, rng, [&](const Point3& q) {
      return stripes_keep(q, params.period, params.thickness);
    });
  }

  if (kind == DesignKind::porous) {
    std::vector<Point3> centers = params.void_centers;
    std::vector<double> radii = params.void_radii;
    if (centers.size() != radii.size()) {
      throw std::invalid_argument(
          "gen_design: void_centers and void_radii differ in length");
    }
    for (double r : radii) {
      if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("gen_design: void radii must be >= 0");
      }
    }
    if (centers.empty() && params.voids > 0) {
      for (int i = 0; i < params.voids; ++i) {
        centers.push_back({rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8),
                           rng.uniform(0.2, 0.8)});
        radii.push_back(rng.uniform(0.08, 0.18));
      }
    }
    return rejection_sample(points, rng, [&](const Point3& q) {
      for (std::size_t i = 0; i < centers.size(); ++i) {
        if (dist(q, centers[i]) < radii[i]) return false;
      }
      return true;
    });
  }

  // cuts
  std::vector<int> axes = params.cut_axes;
  std::vector<double> positions = params.cut_positions;
  if (axes.size() != positions.size()) {
    throw std::invalid_argument(
        "gen_design: cut_axes and cut_positions differ in length");
  }
  for (int a : axes) {
    if (a < 0 || a > 2) {
      throw std::invalid_argument("gen_design: cut axes must be 0, 1 or 2");
    }
  }
  if (!(params.cut_width > 0.0) || params.cut_width >= 1.0) {
    throw std::invalid_argument("gen_design: cut_width must be in (0, 1)");
  }
  if (axes.empty() && params.cuts > 0) {
    for (int i = 0; i < params.cuts; ++i) {
      axes.push_back(static_cast<int>(rng.uniform_index(3)));
      positions.push_back(rng.uniform(0.15, 0.85));
    }
  }
  const double half = 0.5 * params.cut_width;
  return rejection_sample(points, rng, [&](const Point3& q) {
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (std::fabs(q[axes[i]] - positions[i]) < half) return false;
    }
    return true;
  });
}

std::vector<GeneratedCloud> gen_dataset(std::size_t count,
                                        std::size_t points_per_cloud,
                                        std::uint64_t seed) {
  if (count == 0 || points_per_cloud == 0) {
    throw std::invalid_argument("gen_dataset: count and points must be positive");
  }
  std::vector<GeneratedCloud> out(count);
  parallel_tasks(count, [&](std::size_t i) {
    GeneratedCloud& g = out[i];
    g.kind = static_cast<ShapeKind>(i % 4);
    Rng prng(derive_seed(seed, 2 * i));
    switch (g.kind) {
      case ShapeKind::spheres:
      case ShapeKind::cuboids:
        g.params.shells = 1 + static_cast<int>(prng.uniform_index(4));
        break;
      case ShapeKind::planes:
        g.params.planes = 2 + static_cast<int>(prng.uniform_index(4));
        break;
      case ShapeKind::lattice:
        g.params.pitch = 0.2 + 0.05 * static_cast<double>(prng.uniform_index(4));
        g.params.strut_radius = 0.02;
        break;
    }
    g.seed = derive_seed(seed, 2 * i + 1);
    g.cloud = gen_shape(g.kind, points_per_cloud, g.params, g.seed);
  });
  return out;
}

}  // namespace pcblend
