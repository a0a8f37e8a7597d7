#include "pcblend/cloud.hpp"

#include <stdexcept>

#include "pcblend/rng.hpp"

namespace pcblend {

void validate_finite(const PointCloud& cloud, const char* who) {
  if (cloud.empty()) {
    throw std::invalid_argument(std::string(who) + ": point cloud is empty");
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!is_finite(cloud[i])) {
      throw std::invalid_argument(std::string(who) +
                                  ": non-finite coordinate at point " +
                                  std::to_string(i));
    }
  }
}

std::pair<PointCloud, NormalizationTransform> normalize_unit_cube(
    const PointCloud& cloud) {
  validate_finite(cloud);
  const BoundingBox box = cloud.bounds();
  const Point3 ext = box.extent();
  const double longest = std::max(ext.x, std::max(ext.y, ext.z));

  NormalizationTransform t;
  if (longest <= 0.0) {
    t.scale = 1.0;
    t.offset = cloud[0] - Point3{0.5, 0.5, 0.5};
  } else {
    t.scale = longest;
    for (int a = 0; a < 3; ++a)
      t.offset[a] = box.min[a] - 0.5 * (longest - ext[a]);
  }
  return {t.apply(cloud), t};
}

PointCloud perturb_gaussian(const PointCloud& cloud, double sigma,
                            std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("perturb_gaussian: sigma must be >= 0");
  validate_finite(cloud);
  Rng rng(seed);
  PointCloud out;
  out.points.reserve(cloud.size());
  for (const Point3& p : cloud) {
    Point3 q;
    q.x = p.x + sigma * rng.normal();
    q.y = p.y + sigma * rng.normal();
    q.z = p.z + sigma * rng.normal();
    out.points.push_back(q);
  }
  return out;
}

}  // namespace pcblend
