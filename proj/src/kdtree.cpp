#include "pcblend/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pcblend {

KdTree3::KdTree3(const PointCloud& cloud) : points_(cloud.points) {
  if (points_.empty()) throw std::invalid_argument("KdTree3: empty cloud");
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  nodes_.reserve(2 * points_.size() / kLeafSize + 2);
  build(0, points_.size());
}

int KdTree3::build(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  BoundingBox box;
  for (std::size_t i = begin; i < end; ++i) box.expand(points_[order_[i]]);
  nodes_[id].box = box;

  if (end - begin <= kLeafSize) {
    nodes_[id].begin = static_cast<std::uint32_t>(begin);
    nodes_[id].end = static_cast<std::uint32_t>(end);
    return id;
  }

  const Point3 ext = box.extent();
  int axis = 0;
  if (ext.y > ext[axis]) axis = 1;
  if (ext.z > ext[axis]) axis = 2;

  const std::size_t mid = begin + (end - begin) / 2;
  // Index tie-break keeps the split deterministic under duplicate coords.
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](std::size_t a, std::size_t b) {
                     const double va = points_[a][axis];
                     const double vb = points_[b][axis];
                     if (va != vb) return va < vb;
                     return a < b;
                   });

  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::pair<std::size_t, double> KdTree3::nearest(const Point3& query) const {
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  search(kRoot, query, best, best_sq);
  return {best, best_sq};
}

void KdTree3::search(int node_id, const Point3& query, std::size_t& best,
                     double& best_sq) const {
  const Node& node = nodes_[node_id];
  if (node.box.sq_dist_to(query) >= best_sq) return;
  if (node.left < 0) {
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const std::size_t idx = order_[i];
      const double d2 = sq_dist(points_[idx], query);
      if (d2 < best_sq) {
        best_sq = d2;
        best = idx;
      }
    }
    return;
  }
  const double dl = nodes_[node.left].box.sq_dist_to(query);
  const double dr = nodes_[node.right].box.sq_dist_to(query);
  if (dl <= dr) {
    search(node.left, query, best, best_sq);
    search(node.right, query, best, best_sq);
  } else {
    search(node.right, query, best, best_sq);
    search(node.left, query, best, best_sq);
  }
}

}  // namespace pcblend
