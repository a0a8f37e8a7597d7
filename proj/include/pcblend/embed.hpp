#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "pcblend/cloud.hpp"
#include "pcblend/defaults.hpp"

namespace pcblend {

struct Latent {
  std::vector<double> values;
};

// A pluggable cluster embedder. Implementations map fixed-size clusters to
// latent vectors and back; blending happens in latent space unless an
// implementation overrides blend() with something better informed.
//
// Contract: blend(x, y, 1) == decode(encode(x)) and blend(x, y, 0) ==
// decode(encode(y)), exactly. The default blend achieves this because
// 1*a + 0*b == a in IEEE arithmetic.
class Embedder {
 public:
  virtual ~Embedder() = default;

  virtual std::size_t input_size() const = 0;   // points per cluster
  virtual std::size_t latent_size() const = 0;

  virtual Latent encode(const PointCloud& cluster) const = 0;
  virtual PointCloud decode(const Latent& latent) const = 0;

  virtual PointCloud blend(const PointCloud& x, const PointCloud& y,
                           double lambda) const;

  // A lambda sweep over the same pair; overrides can share work between
  // the sweep entries.
  virtual std::vector<PointCloud> blend_many(
      const PointCloud& x, const PointCloud& y,
      const std::vector<double>& lambdas) const;

 protected:
  void check_pair(const PointCloud& x, const PointCloud& y,
                  double lambda) const;
};

// Matches the two clusters point-for-point with an exact EMD bijection and
// interpolates matched pairs: out_i = lambda * x_i + (1-lambda) * y_phi(i).
// encode/decode are plain coordinate flattening. Refuses clusters larger
// than max_points (the matching is cubic; recluster with a larger k).
class OtEmbedder final : public Embedder {
 public:
  explicit OtEmbedder(std::size_t cluster_size,
                      std::size_t max_points = defaults::ot_embedder_max_points);

  std::size_t input_size() const override { return m_; }
  std::size_t latent_size() const override { return 3 * m_; }

  Latent encode(const PointCloud& cluster) const override;
  PointCloud decode(const Latent& latent) const override;
  PointCloud blend(const PointCloud& x, const PointCloud& y,
                   double lambda) const override;
  std::vector<PointCloud> blend_many(
      const PointCloud& x, const PointCloud& y,
      const std::vector<double>& lambdas) const override;

 private:
  std::size_t m_;
};

// Linear model fitted on flattened clusters (points sorted lexicographically
// first, so the coordinate layout does not depend on input order).
struct PcaModel {
  std::size_t m = 0;               // points per cluster
  std::size_t d = 0;               // latent dimension
  std::vector<double> mean;        // 3m
  std::vector<double> basis;       // d rows of 3m, orthonormal
};

// Least-squares optimal rank-d basis of the centered training matrix.
// Requires at least d training clusters, all of the same size, and
// d <= 3 * m.
PcaModel pca_fit(const std::vector<PointCloud>& training, std::size_t d);

void save_pca_model(const PcaModel& model, const std::filesystem::path& path);
PcaModel load_pca_model(const std::filesystem::path& path);

class PcaEmbedder final : public Embedder {
 public:
  explicit PcaEmbedder(PcaModel model);

  std::size_t input_size() const override { return model_.m; }
  std::size_t latent_size() const override { return model_.d; }

  Latent encode(const PointCloud& cluster) const override;
  PointCloud decode(const Latent& latent) const override;

  const PcaModel& model() const { return model_; }

 private:
  PcaModel model_;
};

void save_latent(const Latent& latent, const std::filesystem::path& path);
Latent load_latent(const std::filesystem::path& path);

// Pipelines construct their embedder only after clustering, from the 2k
// cluster clouds of the two inputs (x clusters first, then y clusters).
using EmbedderFactory = std::function<std::shared_ptr<Embedder>(
    const std::vector<PointCloud>& training)>;

EmbedderFactory ot_factory();
// clamp_to_training caps d at the number of training clusters instead of
// erroring (what the CLI wants; the library default is strict).
EmbedderFactory pca_factory(std::size_t d, bool clamp_to_training = false);
// Wraps an already-built embedder (e.g. a PCA model loaded from disk, or an
// externally trained model behind the Embedder interface).
EmbedderFactory fixed_factory(std::shared_ptr<Embedder> embedder);

}  // namespace pcblend
