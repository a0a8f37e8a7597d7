// Brute-force reference implementations and shared fixtures for the tests.
// Everything here is deliberately naive — exhaustive enumeration, double
// loops, textbook Jacobi — and shares no code with the library's solvers, so
// a bug in a fast path cannot cancel out of a comparison.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "pcblend/cloud.hpp"
#include "pcblend/point.hpp"
#include "pcblend/rng.hpp"

namespace oracle {

using pcblend::Point3;
using pcblend::PointCloud;

// ---- transport / clustering ----

// Minimum cost over every balanced labeling: each of the k clusters receives
// exactly m of the n points. Walks the full multinomial tree (no cost-based
// pruning, so negative costs are fine); n <= 12 keeps it instant.
inline double brute_balanced_cost(const std::vector<double>& costs, int n,
                                  int k, int m) {
  std::vector<int> counts(k, 0);
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, int i, double acc) -> void {
    if (i == n) {
      best = std::min(best, acc);
      return;
    }
    for (int h = 0; h < k; ++h) {
      if (counts[h] == m) continue;
      ++counts[h];
      self(self, i + 1, acc + costs[static_cast<std::size_t>(i) * k + h]);
      --counts[h];
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

// Exact EMD by enumerating all |x|! bijections. n <= 8.
inline double brute_emd(const PointCloud& x, const PointCloud& y) {
  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      c += pcblend::dist(x[i], y[static_cast<std::size_t>(perm[i])]);
    }
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// The optimal bijection itself, plus whether it is unique by a clear margin
// (tests that compare matched pairs should skip ambiguous instances).
struct BruteMatching {
  std::vector<int> perm;
  double cost = 0.0;
  bool unique = true;
};

inline BruteMatching brute_emd_matching(const PointCloud& x,
                                        const PointCloud& y,
                                        double margin = 1e-9) {
  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  BruteMatching best;
  best.cost = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      c += pcblend::dist(x[i], y[static_cast<std::size_t>(perm[i])]);
    }
    if (c < best.cost) {
      second = best.cost;
      best.cost = c;
      best.perm = perm;
    } else if (c < second) {
      second = c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.unique = second - best.cost > margin;
  return best;
}

// ---- metrics ----

// Chamfer by double loop. Summation runs in index order per direction, the
// same order the library reduces in, so the comparison can demand exact
// equality.
inline double brute_chamfer(const PointCloud& x, const PointCloud& y) {
  auto one_way = [](const PointCloud& a, const PointCloud& b) {
    double total = 0.0;
    for (const Point3& p : a) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point3& q : b) best = std::min(best, pcblend::sq_dist(p, q));
      total += best;
    }
    return total;
  };
  return one_way(x, y) + one_way(y, x);
}

// ---- density ----

inline double brute_kde(const PointCloud& src, double bandwidth,
                        const Point3& q) {
  const double s2 = bandwidth * bandwidth;
  const double norm =
      1.0 / (static_cast<double>(src.size()) *
             std::pow(2.0 * 3.14159265358979323846 * s2, 1.5));
  double sum = 0.0;
  for (const Point3& p : src) {
    sum += std::exp(-pcblend::sq_dist(q, p) / (2.0 * s2));
  }
  return norm * sum;
}

// ---- linear algebra (PCA reference) ----

// Eigenvalues of a symmetric dim x dim matrix (row-major) by cyclic Jacobi
// rotations, returned in descending order. Plenty for the scatter matrices
// the PCA tests build.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int dim) {
  auto at = [&](int r, int c) -> double& {
    return a[static_cast<std::size_t>(r) * dim + c];
  };
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::fabs(v));
  const double stop = scale * 1e-15;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < dim; ++p) {
      for (int q = p + 1; q < dim; ++q) off = std::max(off, std::fabs(at(p, q)));
    }
    if (off <= stop) break;
    for (int p = 0; p < dim; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const double apq = at(p, q);
        if (std::fabs(apq) <= stop * 1e-2) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < dim; ++i) {
          const double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < dim; ++i) {
          const double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> values(dim);
  for (int i = 0; i < dim; ++i) values[i] = at(i, i);
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

// ---- comparisons ----

// Multiset comparison after canonical (lexicographic) sorting; tol bounds
// every coordinate difference between sorted partners. Exact for tol = 0.
inline bool multiset_equal(PointCloud a, PointCloud b, double tol) {
  if (a.size() != b.size()) return false;
  std::sort(a.points.begin(), a.points.end(), pcblend::lex_less);
  std::sort(b.points.begin(), b.points.end(), pcblend::lex_less);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i].x - b[i].x) > tol || std::fabs(a[i].y - b[i].y) > tol ||
        std::fabs(a[i].z - b[i].z) > tol) {
      return false;
    }
  }
  return true;
}

// Distance from q to the nearest point of `support` (brute force).
inline double dist_to_support(const Point3& q, const PointCloud& support) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point3& p : support) best = std::min(best, pcblend::sq_dist(q, p));
  return std::sqrt(best);
}

// ---- fixtures ----

inline PointCloud random_cloud(std::size_t n, std::uint64_t seed,
                               double lo = 0.0, double hi = 1.0) {
  pcblend::Rng rng(seed);
  PointCloud c;
  c.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.points.push_back({rng.uniform(lo, hi), rng.uniform(lo, hi),
                        rng.uniform(lo, hi)});
  }
  return c;
}

inline PointCloud gaussian_blob(const Point3& center, double sigma,
                                std::size_t n, std::uint64_t seed) {
  pcblend::Rng rng(seed);
  PointCloud c;
  c.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.points.push_back({rng.normal(center.x, sigma), rng.normal(center.y, sigma),
                        rng.normal(center.z, sigma)});
  }
  return c;
}

// A thin horizontal wall: full extent in x and y, z confined to a slab.
inline PointCloud wall_slab(std::size_t n, std::uint64_t seed,
                            double z_lo = 0.47, double z_hi = 0.53) {
  pcblend::Rng rng(seed);
  PointCloud c;
  c.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.points.push_back(
        {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(z_lo, z_hi)});
  }
  return c;
}

// Four tight blobs on the corners of a centered square in the z = 0.5 plane.
// The two balanced 2-splits (left|right and bottom|top) have equal cost, so
// independently seeded clusterings can cut the square differently — the
// instance that makes greedy centroid matching tear a blend apart.
inline PointCloud four_corner_blobs(std::size_t per_blob, std::uint64_t seed,
                                    double sigma = 0.005) {
  const Point3 corners[4] = {{0.1, 0.1, 0.5}, {0.1, 0.9, 0.5},
                             {0.9, 0.1, 0.5}, {0.9, 0.9, 0.5}};
  PointCloud c;
  c.points.reserve(4 * per_blob);
  for (int b = 0; b < 4; ++b) {
    PointCloud blob = gaussian_blob(corners[b], sigma, per_blob,
                                    pcblend::derive_seed(seed, b));
    c.points.insert(c.points.end(), blob.points.begin(), blob.points.end());
  }
  return c;
}

// Bridge-ish union of axis-aligned boxes (deck, two piers, two railings),
// sampled uniformly by volume. The end-to-end demo geometry.
inline PointCloud bridge(std::size_t n, std::uint64_t seed) {
  struct Box {
    Point3 lo, hi;
  };
  const Box boxes[] = {
      {{0.00, 0.35, 0.45}, {1.00, 0.65, 0.55}},  // deck
      {{0.10, 0.40, 0.00}, {0.22, 0.60, 0.45}},  // pier
      {{0.78, 0.40, 0.00}, {0.90, 0.60, 0.45}},  // pier
      {{0.00, 0.33, 0.55}, {1.00, 0.37, 0.70}},  // railing
      {{0.00, 0.63, 0.55}, {1.00, 0.67, 0.70}},  // railing
  };
  double cum[5];
  double total = 0.0;
  for (int b = 0; b < 5; ++b) {
    const Point3 e = boxes[b].hi - boxes[b].lo;
    total += e.x * e.y * e.z;
    cum[b] = total;
  }
  pcblend::Rng rng(seed);
  PointCloud c;
  c.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rng.uniform() * total;
    int b = 0;
    while (b < 4 && r > cum[b]) ++b;
    c.points.push_back({rng.uniform(boxes[b].lo.x, boxes[b].hi.x),
                        rng.uniform(boxes[b].lo.y, boxes[b].hi.y),
                        rng.uniform(boxes[b].lo.z, boxes[b].hi.z)});
  }
  return c;
}

}  // namespace oracle
