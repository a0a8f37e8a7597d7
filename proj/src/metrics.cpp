#include "pcblend/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "pcblend/kdtree.hpp"
#include "pcblend/parallel.hpp"
#include "pcblend/rng.hpp"
#include "pcblend/transport.hpp"

namespace pcblend {
namespace {

// One direction of the chamfer sum. Nearest-neighbour lookups run in
// parallel, the reduction stays in index order so the result is identical
// to the brute-force double loop.
double nn_sq_sum(const PointCloud& from, const KdTree3& to_tree) {
  std::vector<double> d(from.size());
  parallel_for(from.size(),
               [&](std::size_t i) { d[i] = to_tree.nearest(from[i]).second; });
  double total = 0.0;
  for (double v : d) total += v;
  return total;
}

std::vector<double> distance_matrix(const PointCloud& x, const PointCloud& y) {
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<double> c(nx * ny);
  parallel_for(nx, [&](std::size_t i) {
    double* row = c.data() + i * ny;
    for (std::size_t j = 0; j < ny; ++j) row[j] = dist(x[i], y[j]);
  });
  return c;
}

// log-sum-exp over column j of an nx-by-ny matrix: out_j = -eps *
// LSE_i(logw + (pot_i - C_ij) / eps). Two passes per entry instead of a
// scratch buffer; the column stride is the price of not storing C^T.
void lse_update(const std::vector<double>& c, std::size_t nx, std::size_t ny,
                const std::vector<double>& pot, double logw, double eps,
                std::vector<double>& out) {
  parallel_for(ny, [&](std::size_t j) {
    const double inv_eps = 1.0 / eps;
    double zmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nx; ++i) {
      zmax = std::max(zmax, logw + (pot[i] - c[i * ny + j]) * inv_eps);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      sum += std::exp(logw + (pot[i] - c[i * ny + j]) * inv_eps - zmax);
    }
    out[j] = -eps * (zmax + std::log(sum));
  });
}

// Damped fixed-point step for the symmetric problem: p <- (p + T(p)) / 2.
void symmetric_step(const std::vector<double>& c, std::size_t n,
                    double logw, double eps, std::vector<double>& p,
                    std::vector<double>& scratch) {
  lse_update(c, n, n, p, logw, eps, scratch);
  for (std::size_t i = 0; i < n; ++i) p[i] = 0.5 * (p[i] + scratch[i]);
}

double dot_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// The EMD-style term of the combined loss under the chosen mode and
// normalization convention.
double emd_term(const PointCloud& x, const PointCloud& y, EmdMode mode,
                Normalization norm, const SinkhornParams& params) {
  if (mode == EmdMode::exact) {
    const double e = emd_exact(x, y).cost;
    return norm == Normalization::mean ? e / static_cast<double>(x.size()) : e;
  }
  const double s = sinkhorn_divergence(x, y, params).value;
  return norm == Normalization::mean ? s : s * static_cast<double>(x.size());
}

}  // namespace

double chamfer(const PointCloud& x, const PointCloud& y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("chamfer: clouds must be non-empty");
  }
  KdTree3 xt(x), yt(y);
  return nn_sq_sum(x, yt) + nn_sq_sum(y, xt);
}

EmdResult emd_exact(const PointCloud& x, const PointCloud& y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("emd_exact: clouds must be non-empty");
  }
  if (x.size() != y.size()) {
    throw std::invalid_argument("emd_exact: clouds differ in size (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  std::vector<double> c = distance_matrix(x, y);

  // A zero diagonal (in particular x == y) makes the identity matching
  // optimal outright: distances cannot be negative.
  bool zero_diag = true;
  for (std::size_t i = 0; i < n && zero_diag; ++i) {
    zero_diag = c[i * n + i] == 0.0;
  }
  EmdResult res;
  if (zero_diag) {
    res.matching.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.matching[i] = static_cast<int>(i);
    res.cost = 0.0;
    return res;
  }

  auto sol = transport::solve_dense_assignment(c, static_cast<int>(n));
  res.matching = std::move(sol.match);
  res.cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res.cost += dist(x[i], y[res.matching[i]]);
  }
  return res;
}

SinkhornResult sinkhorn_divergence(const PointCloud& x, const PointCloud& y,
                                   const SinkhornParams& params) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("sinkhorn_divergence: clouds must be non-empty");
  }
  if (!(params.blur > 0.0) || !std::isfinite(params.blur)) {
    throw std::invalid_argument("sinkhorn_divergence: blur must be positive");
  }
  if (!(params.scaling > 0.0) || !(params.scaling < 1.0)) {
    throw std::invalid_argument("sinkhorn_divergence: scaling must be in (0,1)");
  }
  if (params.max_iters < 1) {
    throw std::invalid_argument("sinkhorn_divergence: max_iters must be positive");
  }
  validate_finite(x, "sinkhorn_divergence");
  validate_finite(y, "sinkhorn_divergence");

  const std::size_t nx = x.size(), ny = y.size();
  const double log_a = -std::log(static_cast<double>(nx));
  const double log_b = -std::log(static_cast<double>(ny));

  const std::vector<double> cxy = distance_matrix(x, y);
  const std::vector<double> cxx = distance_matrix(x, x);
  const std::vector<double> cyy = distance_matrix(y, y);

  BoundingBox box = x.bounds();
  for (const Point3& p : y.points) box.expand(p);
  const double diag = box.diagonal();

  std::vector<double> schedule;
  double eps = std::max(diag, params.blur);
  schedule.push_back(eps);
  while (eps > params.blur) {
    eps = std::max(params.blur, eps * params.scaling);
    schedule.push_back(eps);
  }

  std::vector<double> f(nx, 0.0), g(ny, 0.0), p(nx, 0.0), q(ny, 0.0);
  std::vector<double> sx(nx), sy(ny);

  // The f update runs LSE over columns of Cyx = Cxy^T; materialize the
  // transpose once so both cross updates read with the same stride pattern.
  std::vector<double> cyx(nx * ny);
  parallel_for(ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < nx; ++i) cyx[j * nx + i] = cxy[i * ny + j];
  });
  auto round = [&](double e) {
    lse_update(cxy, nx, ny, f, log_a, e, g);
    lse_update(cyx, ny, nx, g, log_b, e, f);
    symmetric_step(cxx, nx, log_a, e, p, sx);
    symmetric_step(cyy, ny, log_b, e, q, sy);
  };

  // The alternating updates leave a gauge freedom (f + c, g - c) that never
  // settles in potential space but cancels in the divergence, so convergence
  // is judged on the value itself.  The value keeps drifting slowly after
  // annealing (a translation mode with decay rate ~ eps/diameter), but the
  // drift is orders of magnitude below the O(eps) entropic bias already
  // accepted by choosing blur, so the stall tolerance is scaled to blur
  // rather than to machine precision.
  auto divergence = [&] {
    std::vector<double> fd(nx), gd(ny);
    for (std::size_t i = 0; i < nx; ++i) fd[i] = f[i] - p[i];
    for (std::size_t j = 0; j < ny; ++j) gd[j] = g[j] - q[j];
    return dot_mean(fd) + dot_mean(gd);
  };

  const double vtol = 1e-3 * params.blur;
  SinkhornResult res;
  for (std::size_t s = 0; s + 1 < schedule.size(); ++s) {
    round(schedule[s]);
  }
  const double final_eps = schedule.back();
  double value = divergence();
  while (res.iterations < params.max_iters) {
    round(final_eps);
    ++res.iterations;
    const double next = divergence();
    const double delta = std::fabs(next - value);
    value = next;
    if (delta <= vtol) {
      res.converged = true;
      break;
    }
  }
  res.value = value;
  return res;
}

double combined_loss(const PointCloud& x, const PointCloud& y,
                     const LossWeights& weights, EmdMode mode,
                     Normalization norm, const SinkhornParams& params) {
  if (!(weights.alpha_emd >= 0.0) || !std::isfinite(weights.alpha_emd) ||
      !(weights.alpha_chamfer >= 0.0) || !std::isfinite(weights.alpha_chamfer)) {
    throw std::invalid_argument("combined_loss: weights must be finite and >= 0");
  }
  return weights.alpha_emd * emd_term(x, y, mode, norm, params) +
         weights.alpha_chamfer * chamfer(x, y);
}

LossWeights calibrate_weights(const std::vector<PointCloud>& dataset,
                              int num_pairs, std::uint64_t seed, EmdMode mode,
                              Normalization norm,
                              const SinkhornParams& params) {
  if (dataset.size() < 2) {
    throw std::invalid_argument("calibrate_weights: need at least two clouds");
  }
  if (num_pairs < 1) {
    throw std::invalid_argument("calibrate_weights: num_pairs must be positive");
  }

  const std::size_t n = dataset.size();
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  if (static_cast<std::size_t>(num_pairs) < pairs.size()) {
    Rng rng(seed);
    for (int t = 0; t < num_pairs; ++t) {
      const std::size_t j = t + rng.uniform_index(pairs.size() - t);
      std::swap(pairs[t], pairs[j]);
    }
    pairs.resize(num_pairs);
  }

  double max_emd = 0.0, max_chamfer = 0.0;
  for (const auto& [i, j] : pairs) {
    max_emd = std::max(max_emd, emd_term(dataset[i], dataset[j], mode, norm, params));
    max_chamfer = std::max(max_chamfer, chamfer(dataset[i], dataset[j]));
  }
  if (!(max_emd > 0.0) || !(max_chamfer > 0.0)) {
    throw std::invalid_argument(
        "calibrate_weights: sampled pairs are degenerate (a loss term is zero "
        "on every pair)");
  }
  return LossWeights{1.0 / max_emd, 1.0 / max_chamfer};
}

}  // namespace pcblend
