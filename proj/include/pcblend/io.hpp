// Cloud file I/O.
//
// ascii-xyz: one point per line, three whitespace-separated reals, lines
// starting with '#' ignored. PLY: binary_little_endian 1.0 with a single
// "vertex" element carrying float x, y, z and nothing else.

#pragma once

#include <filesystem>

#include "pcblend/cloud.hpp"

namespace pcblend {

enum class CloudFormat { xyz, ply };

// Picks ply for a ".ply" extension (case-insensitive), xyz otherwise.
CloudFormat format_from_path(const std::filesystem::path& path);

PointCloud load_cloud(const std::filesystem::path& path, CloudFormat format);
void store_cloud(const PointCloud& cloud, const std::filesystem::path& path,
                 CloudFormat format);

// Extension-dispatched convenience wrappers.
PointCloud load_cloud(const std::filesystem::path& path);
void store_cloud(const PointCloud& cloud, const std::filesystem::path& path);

}  // namespace pcblend
