// Library-wide default parameters, overridable everywhere they appear.

#pragma once

#include <cstdint>

namespace pcblend::defaults {

inline constexpr std::uint64_t seed = 1729;

// Clustering
inline constexpr int cluster_size = 2048;  // points per cluster (m)
inline constexpr int kmeans_max_iters = 100;
inline constexpr double kmeans_tol = 1e-9;

// Transport metrics
inline constexpr double sinkhorn_blur = 1e-3;
inline constexpr double sinkhorn_scaling = 0.9;
inline constexpr int sinkhorn_max_iters = 500;
inline constexpr int calibration_pairs = 1000;

// Density style transfer
inline constexpr double kde_bandwidth = 0.01;
inline constexpr double style_noise_sigma = 0.001;

// Embedding
inline constexpr int pca_latent_dim = 512;
inline constexpr int ot_embedder_max_points = 4096;

}  // namespace pcblend::defaults
