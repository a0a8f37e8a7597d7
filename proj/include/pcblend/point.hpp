// 3-D point type and the small vector helpers everything else builds on.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace pcblend {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  double operator[](int axis) const {
    return axis == 0 ? x : (axis == 1 ? y : z);
  }

  Point3& operator+=(const Point3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline Point3 operator+(const Point3& a, const Point3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Point3 operator-(const Point3& a, const Point3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Point3 operator*(const Point3& a, double s) {
  return {a.x * s, a.y * s, a.z * s};
}
inline Point3 operator*(double s, const Point3& a) { return a * s; }
inline Point3 operator/(const Point3& a, double s) {
  return {a.x / s, a.y / s, a.z / s};
}
inline bool operator==(const Point3& a, const Point3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}

// Shared by the brute-force and indexed paths; both must produce the exact
// same double for a given pair.
inline double sq_dist(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double dist(const Point3& a, const Point3& b) {
  return std::sqrt(sq_dist(a, b));
}

inline double norm(const Point3& a) {
  return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
}

inline bool is_finite(const Point3& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

// Lexicographic (x, y, z) order; the canonical ordering used wherever a
// reproducible point sequence is required.
inline bool lex_less(const Point3& a, const Point3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

struct BoundingBox {
  Point3 min{std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
  Point3 max{-std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};

  void expand(const Point3& p) {
    min.x = p.x < min.x ? p.x : min.x;
    min.y = p.y < min.y ? p.y : min.y;
    min.z = p.z < min.z ? p.z : min.z;
    max.x = p.x > max.x ? p.x : max.x;
    max.y = p.y > max.y ? p.y : max.y;
    max.z = p.z > max.z ? p.z : max.z;
  }

  Point3 extent() const { return max - min; }
  Point3 center() const { return (min + max) * 0.5; }
  double diagonal() const { return dist(min, max); }

  // Squared distance from q to the box (0 if inside).
  double sq_dist_to(const Point3& q) const {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      double lo = min[a], hi = max[a], v = q[a];
      double d = v < lo ? lo - v : (v > hi ? v - hi : 0.0);
      d2 += d * d;
    }
    return d2;
  }
};

}  // namespace pcblend
