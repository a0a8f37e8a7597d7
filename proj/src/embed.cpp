#include "pcblend/embed.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "pcblend/metrics.hpp"

namespace pcblend {
namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
    throw std::invalid_argument("blend: lambda must lie in [0, 1], got " +
                                std::to_string(lambda));
  }
}

std::vector<double> flatten(const PointCloud& c) {
  std::vector<double> v;
  v.reserve(3 * c.size());
  for (const Point3& p : c.points) {
    v.push_back(p.x);
    v.push_back(p.y);
    v.push_back(p.z);
  }
  return v;
}

PointCloud unflatten(const std::vector<double>& v) {
  PointCloud c;
  c.points.reserve(v.size() / 3);
  for (std::size_t i = 0; i + 2 < v.size(); i += 3) {
    c.points.push_back({v[i], v[i + 1], v[i + 2]});
  }
  return c;
}

std::vector<double> canonical_flatten(const PointCloud& c) {
  PointCloud sorted = c;
  std::sort(sorted.points.begin(), sorted.points.end(), lex_less);
  return flatten(sorted);
}

void read_exact(std::ifstream& in, void* dst, std::size_t bytes,
                const std::string& path) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(in.gcount()) != bytes) {
    throw std::runtime_error(path + ": truncated file (expected " +
                             std::to_string(bytes) + " more bytes, got " +
                             std::to_string(in.gcount()) + ")");
  }
}

void check_finite_values(const std::vector<double>& v, const std::string& who) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw std::runtime_error(who + ": value " + std::to_string(i) +
                               " is not finite");
    }
  }
}

constexpr char kModelMagic[8] = {'P', 'C', 'B', 'P', 'C', 'A', '1', '\n'};

}  // namespace

void Embedder::check_pair(const PointCloud& x, const PointCloud& y,
                          double lambda) const {
  check_lambda(lambda);
  if (x.size() != input_size() || y.size() != input_size()) {
    throw std::invalid_argument(
        "blend: cluster sizes " + std::to_string(x.size()) + "/" +
        std::to_string(y.size()) + " do not match the embedder input size " +
        std::to_string(input_size()));
  }
}

PointCloud Embedder::blend(const PointCloud& x, const PointCloud& y,
                           double lambda) const {
  check_pair(x, y, lambda);
  const Latent zx = encode(x), zy = encode(y);
  Latent z;
  z.values.resize(zx.values.size());
  for (std::size_t i = 0; i < z.values.size(); ++i) {
    z.values[i] = lambda * zx.values[i] + (1.0 - lambda) * zy.values[i];
  }
  return decode(z);
}

std::vector<PointCloud> Embedder::blend_many(
    const PointCloud& x, const PointCloud& y,
    const std::vector<double>& lambdas) const {
  for (double l : lambdas) check_pair(x, y, l);
  const Latent zx = encode(x), zy = encode(y);
  std::vector<PointCloud> out;
  out.reserve(lambdas.size());
  Latent z;
  z.values.resize(zx.values.size());
  for (double l : lambdas) {
    for (std::size_t i = 0; i < z.values.size(); ++i) {
      z.values[i] = l * zx.values[i] + (1.0 - l) * zy.values[i];
    }
    out.push_back(decode(z));
  }
  return out;
}

OtEmbedder::OtEmbedder(std::size_t cluster_size, std::size_t max_points)
    : m_(cluster_size) {
  if (cluster_size == 0) {
    throw std::invalid_argument("OtEmbedder: cluster size must be positive");
  }
  if (cluster_size > max_points) {
    throw std::invalid_argument(
        "OtEmbedder: cluster size " + std::to_string(cluster_size) +
        " exceeds the matching limit " + std::to_string(max_points) +
        "; recluster with a larger k");
  }
}

Latent OtEmbedder::encode(const PointCloud& cluster) const {
  if (cluster.size() != m_) {
    throw std::invalid_argument("OtEmbedder::encode: expected " +
                                std::to_string(m_) + " points, got " +
                                std::to_string(cluster.size()));
  }
  return Latent{flatten(cluster)};
}

PointCloud OtEmbedder::decode(const Latent& latent) const {
  if (latent.values.size() != 3 * m_) {
    throw std::invalid_argument("OtEmbedder::decode: expected " +
                                std::to_string(3 * m_) + " values, got " +
                                std::to_string(latent.values.size()));
  }
  return unflatten(latent.values);
}

PointCloud OtEmbedder::blend(const PointCloud& x, const PointCloud& y,
                             double lambda) const {
  return blend_many(x, y, {lambda}).front();
}

std::vector<PointCloud> OtEmbedder::blend_many(
    const PointCloud& x, const PointCloud& y,
    const std::vector<double>& lambdas) const {
  for (double l : lambdas) check_pair(x, y, l);
  const EmdResult match = emd_exact(x, y);
  std::vector<PointCloud> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) {
    PointCloud b;
    b.points.reserve(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const Point3& a = x[i];
      const Point3& c = y[match.matching[i]];
      b.points.push_back({l * a.x + (1.0 - l) * c.x,
                          l * a.y + (1.0 - l) * c.y,
                          l * a.z + (1.0 - l) * c.z});
    }
    out.push_back(std::move(b));
  }
  return out;
}

PcaModel pca_fit(const std::vector<PointCloud>& training, std::size_t d) {
  if (training.empty()) {
    throw std::invalid_argument("pca_fit: no training clusters");
  }
  const std::size_t m = training[0].size();
  if (m == 0) {
    throw std::invalid_argument("pca_fit: training clusters are empty");
  }
  for (std::size_t i = 0; i < training.size(); ++i) {
    if (training[i].size() != m) {
      throw std::invalid_argument(
          "pca_fit: cluster " + std::to_string(i) + " has " +
          std::to_string(training[i].size()) + " points, expected " +
          std::to_string(m));
    }
    validate_finite(training[i], "pca_fit");
  }
  if (d == 0) {
    throw std::invalid_argument("pca_fit: latent dimension must be positive");
  }
  if (d > training.size()) {
    throw std::invalid_argument(
        "pca_fit: fewer training clusters (" + std::to_string(training.size()) +
        ") than latent dimensions (" + std::to_string(d) + ")");
  }
  if (d > 3 * m) {
    throw std::invalid_argument("pca_fit: latent dimension " +
                                std::to_string(d) + " exceeds 3m = " +
                                std::to_string(3 * m));
  }

  const std::size_t cols = 3 * m;
  Eigen::MatrixXd a(training.size(), cols);
  for (std::size_t r = 0; r < training.size(); ++r) {
    const std::vector<double> row = canonical_flatten(training[r]);
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = row[c];
  }
  const Eigen::RowVectorXd mean = a.colwise().mean();
  a.rowwise() -= mean;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  const Eigen::MatrixXd& v = svd.matrixV();

  PcaModel model;
  model.m = m;
  model.d = d;
  model.mean.assign(mean.data(), mean.data() + cols);
  model.basis.resize(d * cols);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      model.basis[r * cols + c] = v(c, r);
    }
  }
  return model;
}

void save_pca_model(const PcaModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("save_pca_model: cannot open " + path.string());
  }
  out.write(kModelMagic, sizeof kModelMagic);
  const std::uint32_t m32 = static_cast<std::uint32_t>(model.m);
  const std::uint32_t d32 = static_cast<std::uint32_t>(model.d);
  out.write(reinterpret_cast<const char*>(&m32), 4);
  out.write(reinterpret_cast<const char*>(&d32), 4);
  out.write(reinterpret_cast<const char*>(model.mean.data()),
            static_cast<std::streamsize>(model.mean.size() * 8));
  out.write(reinterpret_cast<const char*>(model.basis.data()),
            static_cast<std::streamsize>(model.basis.size() * 8));
  if (!out) {
    throw std::runtime_error("save_pca_model: write failed for " +
                             path.string());
  }
}

PcaModel load_pca_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_pca_model: cannot open " + path.string());
  }
  char magic[8];
  read_exact(in, magic, sizeof magic, path.string());
  if (std::memcmp(magic, kModelMagic, sizeof magic) != 0) {
    throw std::runtime_error("load_pca_model: " + path.string() +
                             " is not a PCA model file");
  }
  std::uint32_t m32 = 0, d32 = 0;
  read_exact(in, &m32, 4, path.string());
  read_exact(in, &d32, 4, path.string());
  if (m32 == 0 || d32 == 0 || d32 > 3u * m32) {
    throw std::runtime_error("load_pca_model: " + path.string() +
                             " has inconsistent dimensions m=" +
                             std::to_string(m32) + " d=" + std::to_string(d32));
  }
  PcaModel model;
  model.m = m32;
  model.d = d32;
  model.mean.resize(3 * model.m);
  model.basis.resize(model.d * 3 * model.m);
  read_exact(in, model.mean.data(), model.mean.size() * 8, path.string());
  read_exact(in, model.basis.data(), model.basis.size() * 8, path.string());
  check_finite_values(model.mean, "load_pca_model: " + path.string());
  check_finite_values(model.basis, "load_pca_model: " + path.string());
  return model;
}

PcaEmbedder::PcaEmbedder(PcaModel model) : model_(std::move(model)) {
  if (model_.m == 0 || model_.d == 0 ||
      model_.mean.size() != 3 * model_.m ||
      model_.basis.size() != model_.d * 3 * model_.m) {
    throw std::invalid_argument("PcaEmbedder: inconsistent model");
  }
}

Latent PcaEmbedder::encode(const PointCloud& cluster) const {
  if (cluster.size() != model_.m) {
    throw std::invalid_argument("PcaEmbedder::encode: expected " +
                                std::to_string(model_.m) + " points, got " +
                                std::to_string(cluster.size()));
  }
  const std::vector<double> v = canonical_flatten(cluster);
  const std::size_t cols = 3 * model_.m;
  Latent z;
  z.values.resize(model_.d);
  for (std::size_t r = 0; r < model_.d; ++r) {
    const double* b = model_.basis.data() + r * cols;
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += b[c] * (v[c] - model_.mean[c]);
    z.values[r] = s;
  }
  return z;
}

PointCloud PcaEmbedder::decode(const Latent& latent) const {
  if (latent.values.size() != model_.d) {
    throw std::invalid_argument("PcaEmbedder::decode: expected " +
                                std::to_string(model_.d) + " values, got " +
                                std::to_string(latent.values.size()));
  }
  const std::size_t cols = 3 * model_.m;
  std::vector<double> v = model_.mean;
  for (std::size_t r = 0; r < model_.d; ++r) {
    const double* b = model_.basis.data() + r * cols;
    const double z = latent.values[r];
    for (std::size_t c = 0; c < cols; ++c) v[c] += z * b[c];
  }
  return unflatten(v);
}

void save_latent(const Latent& latent, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("save_latent: cannot open " + path.string());
  }
  const std::uint32_t d32 = static_cast<std::uint32_t>(latent.values.size());
  out.write(reinterpret_cast<const char*>(&d32), 4);
  out.write(reinterpret_cast<const char*>(latent.values.data()),
            static_cast<std::streamsize>(latent.values.size() * 8));
  if (!out) {
    throw std::runtime_error("save_latent: write failed for " + path.string());
  }
}

Latent load_latent(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_latent: cannot open " + path.string());
  }
  std::uint32_t d32 = 0;
  read_exact(in, &d32, 4, path.string());
  Latent z;
  z.values.resize(d32);
  read_exact(in, z.values.data(), z.values.size() * 8, path.string());
  char extra;
  if (in.read(&extra, 1); in.gcount() != 0) {
    throw std::runtime_error("load_latent: " + path.string() +
                             " has trailing bytes after " +
                             std::to_string(d32) + " values");
  }
  check_finite_values(z.values, "load_latent: " + path.string());
  return z;
}

EmbedderFactory ot_factory() {
  return [](const std::vector<PointCloud>& training) -> std::shared_ptr<Embedder> {
    if (training.empty()) {
      throw std::invalid_argument("ot_factory: no training clusters");
    }
    return std::make_shared<OtEmbedder>(training[0].size());
  };
}

EmbedderFactory pca_factory(std::size_t d, bool clamp_to_training) {
  return [d, clamp_to_training](
             const std::vector<PointCloud>& training) -> std::shared_ptr<Embedder> {
    if (training.empty()) {
      throw std::invalid_argument("pca_factory: no training clusters");
    }
    std::size_t dd = d;
    if (clamp_to_training) {
      dd = std::min({d, training.size(), 3 * training[0].size()});
    }
    return std::make_shared<PcaEmbedder>(pca_fit(training, dd));
  };
}

EmbedderFactory fixed_factory(std::shared_ptr<Embedder> embedder) {
  if (!embedder) {
    throw std::invalid_argument("fixed_factory: null embedder");
  }
  return [embedder](const std::vector<PointCloud>&) { return embedder; };
}

}  // namespace pcblend
