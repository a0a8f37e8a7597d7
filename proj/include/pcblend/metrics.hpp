#pragma once

#include <cstdint>
#include <vector>

#include "pcblend/cloud.hpp"
#include "pcblend/defaults.hpp"

namespace pcblend {

// Sum of squared nearest-neighbour distances in both directions. The clouds
// may have different sizes. Matches a brute-force double loop bit for bit.
double chamfer(const PointCloud& x, const PointCloud& y);

struct EmdResult {
  double cost = 0.0;          // sum of Euclidean distances over the matching
  std::vector<int> matching;  // x index -> y index, a permutation
};

// Exact earth mover's distance between equal-size clouds: the cheapest
// bijection under Euclidean ground cost. O(n^3) worst case and materializes
// the n x n distance matrix, so keep n in the few-thousands range.
EmdResult emd_exact(const PointCloud& x, const PointCloud& y);

struct SinkhornParams {
  double blur = defaults::sinkhorn_blur;        // final epsilon
  double scaling = defaults::sinkhorn_scaling;  // annealing ratio in (0,1)
  int max_iters = defaults::sinkhorn_max_iters;
};

struct SinkhornResult {
  double value = 0.0;
  bool converged = false;  // value stalled within 1e-3 * blur per update
  int iterations = 0;      // updates spent at the final epsilon
};

// Debiased entropic OT divergence with Euclidean (p = 1) ground cost and
// uniform weights: S(x,y) = OT_eps(x,y) - (OT_eps(x,x) + OT_eps(y,y)) / 2,
// computed per unit mass. Epsilon anneals from the joint bounding-box
// diagonal down to `blur` by factors of `scaling`. Non-negative up to
// convergence error and zero when x == y.
SinkhornResult sinkhorn_divergence(const PointCloud& x, const PointCloud& y,
                                   const SinkhornParams& params = {});

enum class EmdMode { exact, sinkhorn };
enum class Normalization { sum, mean };

struct LossWeights {
  double alpha_emd = 1.0;
  double alpha_chamfer = 1.0;
};

// alpha_emd * EMD-term + alpha_chamfer * chamfer(x, y). The EMD term is
// emd_exact or the Sinkhorn divergence; Normalization::mean divides the
// exact cost by n (the Sinkhorn value is already per unit mass).
double combined_loss(const PointCloud& x, const PointCloud& y,
                     const LossWeights& weights,
                     EmdMode mode = EmdMode::exact,
                     Normalization norm = Normalization::sum,
                     const SinkhornParams& params = {});

// Weights that bring both terms onto a common scale: 1 / max over sampled
// distinct cloud pairs of each raw term. Samples without replacement;
// num_pairs >= N(N-1)/2 means every pair.
LossWeights calibrate_weights(const std::vector<PointCloud>& dataset,
                              int num_pairs = defaults::calibration_pairs,
                              std::uint64_t seed = defaults::seed,
                              EmdMode mode = EmdMode::exact,
                              Normalization norm = Normalization::sum,
                              const SinkhornParams& params = {});

}  // namespace pcblend
