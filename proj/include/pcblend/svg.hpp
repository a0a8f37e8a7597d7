#pragma once

#include <filesystem>

#include "pcblend/cloud.hpp"

namespace pcblend {

struct SvgOptions {
  double point_radius = 1.5;  // marker radius in pixels
  double canvas = 512.0;      // square canvas edge in pixels
};

// Orthographic scatter projection along `axis` (0 = x, 1 = y, 2 = z). The
// unit cube maps to the canvas (with a small margin); one circle marker is
// emitted per point, in order.
void export_svg(const PointCloud& cloud, int axis,
                const std::filesystem::path& path,
                const SvgOptions& options = {});

}  // namespace pcblend
