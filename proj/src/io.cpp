#include "pcblend/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pcblend {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

PointCloud load_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream row(line);
    Point3 p;
    if (!(row >> p.x >> p.y >> p.z))
      fail(path, "parse error at line " + std::to_string(line_no) +
                     ": expected 3 coordinates");
    std::string extra;
    if (row >> extra)
      fail(path, "parse error at line " + std::to_string(line_no) +
                     ": trailing token '" + extra + "'");
    if (!is_finite(p))
      fail(path, "non-finite coordinate at line " + std::to_string(line_no));
    cloud.points.push_back(p);
  }
  if (cloud.empty()) fail(path, "file contains no points");
  return cloud;
}

void store_xyz(const PointCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open file for writing");
  char buf[128];
  for (const Point3& p : cloud) {
    std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n", p.x, p.y, p.z);
    out << buf;
  }
  if (!out) fail(path, "write failed");
}

PointCloud load_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");

  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) fail(path, "unexpected end of header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
  };

  next_line();
  if (line != "ply") fail(path, "line 1: not a PLY file");

  std::size_t vertex_count = 0;
  bool format_seen = false;
  bool in_vertex_element = false;
  int property_index = 0;
  static const char* kProps[3] = {"x", "y", "z"};

  while (true) {
    next_line();
    if (line == "end_header") break;
    std::istringstream row(line);
    std::string keyword;
    row >> keyword;
    if (keyword == "comment" || keyword == "obj_info") continue;
    if (keyword == "format") {
      std::string fmt, version;
      row >> fmt >> version;
      if (fmt != "binary_little_endian" || version != "1.0")
        fail(path, "line " + std::to_string(line_no) +
                       ": unsupported format '" + fmt +
                       "' (expected binary_little_endian 1.0)");
      format_seen = true;
    } else if (keyword == "element") {
      std::string name;
      std::size_t count = 0;
      row >> name >> count;
      if (name != "vertex")
        fail(path, "line " + std::to_string(line_no) +
                       ": unsupported PLY element '" + name + "'");
      if (in_vertex_element)
        fail(path, "line " + std::to_string(line_no) + ": duplicate vertex element");
      vertex_count = count;
      in_vertex_element = true;
    } else if (keyword == "property") {
      std::string type, name;
      row >> type >> name;
      if (!in_vertex_element || property_index >= 3 || type != "float" ||
          name != kProps[property_index])
        fail(path, "line " + std::to_string(line_no) +
                       ": unsupported PLY property '" + type + " " + name + "'");
      ++property_index;
    } else {
      fail(path, "line " + std::to_string(line_no) + ": unknown header keyword '" +
                     keyword + "'");
    }
  }
  if (!format_seen) fail(path, "header missing format line");
  if (!in_vertex_element || property_index != 3)
    fail(path, "header must declare element vertex with float x, y, z");
  if (vertex_count == 0) fail(path, "file contains no points");

  const std::size_t expected = vertex_count * 3 * sizeof(float);
  std::vector<char> raw(expected);
  in.read(raw.data(), static_cast<std::streamsize>(expected));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got != expected)
    fail(path, "truncated vertex data: expected " + std::to_string(expected) +
                   " bytes, got " + std::to_string(got));

  PointCloud cloud;
  cloud.points.reserve(vertex_count);
  const char* cursor = raw.data();
  for (std::size_t i = 0; i < vertex_count; ++i) {
    float xyz[3];
    std::memcpy(xyz, cursor, sizeof(xyz));
    cursor += sizeof(xyz);
    Point3 p{xyz[0], xyz[1], xyz[2]};
    if (!is_finite(p))
      fail(path, "non-finite coordinate in vertex " + std::to_string(i));
    cloud.points.push_back(p);
  }
  return cloud;
}

void store_ply(const PointCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out << "ply\n"
      << "format binary_little_endian 1.0\n"
      << "element vertex " << cloud.size() << "\n"
      << "property float x\n"
      << "property float y\n"
      << "property float z\n"
      << "end_header\n";
  std::vector<float> raw;
  raw.reserve(cloud.size() * 3);
  for (const Point3& p : cloud) {
    raw.push_back(static_cast<float>(p.x));
    raw.push_back(static_cast<float>(p.y));
    raw.push_back(static_cast<float>(p.z));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(float)));
  if (!out) fail(path, "write failed");
}

}  // namespace

CloudFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".ply" ? CloudFormat::ply : CloudFormat::xyz;
}

PointCloud load_cloud(const std::filesystem::path& path, CloudFormat format) {
  return format == CloudFormat::ply ? load_ply(path) : load_xyz(path);
}

void store_cloud(const PointCloud& cloud, const std::filesystem::path& path,
                 CloudFormat format) {
  if (cloud.empty())
    throw std::invalid_argument("store_cloud: refusing to write an empty cloud");
  if (format == CloudFormat::ply)
    store_ply(cloud, path);
  else
    store_xyz(cloud, path);
}

PointCloud load_cloud(const std::filesystem::path& path) {
  return load_cloud(path, format_from_path(path));
}

void store_cloud(const PointCloud& cloud, const std::filesystem::path& path) {
  store_cloud(cloud, path, format_from_path(path));
}

}  // namespace pcblend
