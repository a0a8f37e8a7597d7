// Exact 3-D k-d tree for nearest-neighbour and pruned range traversal.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pcblend/cloud.hpp"

namespace pcblend {

class KdTree3 {
 public:
  explicit KdTree3(const PointCloud& cloud);

  std::size_t size() const { return points_.size(); }

  // Exact nearest neighbour: (point index, squared distance). Squared
  // distances are computed with sq_dist, so values match a brute-force scan
  // bit for bit.
  std::pair<std::size_t, double> nearest(const Point3& query) const;

  // Calls fn(index, sq_dist) for every point with sq_dist <= radius_sq.
  template <class Fn>
  void for_each_within(const Point3& query, double radius_sq, Fn&& fn) const {
    if (!points_.empty()) visit(kRoot, query, radius_sq, fn);
  }

 private:
  struct Node {
    BoundingBox box;
    int left = -1;   // -1 for leaves
    int right = -1;
    std::uint32_t begin = 0;  // leaf range into order_
    std::uint32_t end = 0;
  };

  static constexpr int kRoot = 0;
  static constexpr std::size_t kLeafSize = 16;

  int build(std::size_t begin, std::size_t end);
  void search(int node, const Point3& query, std::size_t& best,
              double& best_sq) const;

  template <class Fn>
  void visit(int node_id, const Point3& query, double radius_sq, Fn& fn) const {
    const Node& node = nodes_[node_id];
    if (node.box.sq_dist_to(query) > radius_sq) return;
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::size_t idx = order_[i];
        const double d2 = sq_dist(points_[idx], query);
        if (d2 <= radius_sq) fn(idx, d2);
      }
      return;
    }
    visit(node.left, query, radius_sq, fn);
    visit(node.right, query, radius_sq, fn);
  }

  std::vector<Point3> points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace pcblend
