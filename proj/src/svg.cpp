#include "pcblend/svg.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pcblend {

void export_svg(const PointCloud& cloud, int axis,
                const std::filesystem::path& path, const SvgOptions& options) {
  validate_finite(cloud, "export_svg");
  if (axis < 0 || axis > 2) {
    throw std::invalid_argument("export_svg: axis must be 0, 1 or 2");
  }
  if (!(options.point_radius > 0.0) || !(options.canvas > 0.0)) {
    throw std::invalid_argument("export_svg: radius and canvas must be positive");
  }

  // Project away `axis`; keep the remaining axes in (horizontal, vertical)
  // order with the vertical flipped, since SVG y grows downward.
  const int hx = axis == 0 ? 1 : 0;
  const int vy = axis == 2 ? 1 : 2;
  const double margin = options.point_radius + 2.0;
  const double span = options.canvas - 2.0 * margin;

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("export_svg: cannot open " + path.string());
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
                "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                options.canvas, options.canvas, options.canvas, options.canvas);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Point3& p : cloud) {
    const double cx = margin + p[hx] * span;
    const double cy = options.canvas - (margin + p[vy] * span);
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%g\" fill=\"black\" "
                  "fill-opacity=\"0.55\"/>\n",
                  cx, cy, options.point_radius);
    out << buf;
  }
  out << "</svg>\n";
  if (!out) {
    throw std::runtime_error("export_svg: write failed for " + path.string());
  }
}

}  // namespace pcblend
