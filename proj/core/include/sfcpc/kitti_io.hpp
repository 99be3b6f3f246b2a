#ifndef SFCPC_KITTI_IO_HPP
#define SFCPC_KITTI_IO_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>

#include "sfcpc/cloud.hpp"

namespace sfcpc {

// SemanticKITTI scan layout: 16 bytes per point, four consecutive 32-bit
// little-endian IEEE-754 floats in order x, y, z, intensity. Labels are one
// 32-bit little-endian unsigned per point; the semantic class is the low 16
// bits, the high 16 bits carry the instance id and are dropped.

/// Parses an in-memory scan buffer. source names the input in error
/// messages. Throws IoError when the size is not a multiple of 16 or a
/// coordinate is non-finite (naming the point index).
PointCloud parse_kitti_bin(std::span<const std::byte> bytes, const std::string& source);

PointCloud load_kitti_bin(const std::filesystem::path& path);

/// Returns a copy of the cloud with per-point semantic labels attached.
/// Throws IoError when the label count differs from cloud.size().
PointCloud load_labels(const std::filesystem::path& path, PointCloud cloud);

/// Writes the 16-byte-per-point layout; a missing intensity column is
/// written as zeros. Values already representable in float32 round-trip
/// bit-exactly.
void save_kitti_bin(const PointCloud& cloud, const std::filesystem::path& path);

/// Writes one uint32 per point with the semantic class in the low 16 bits.
/// Throws std::invalid_argument when the cloud has no labels.
void save_labels(const PointCloud& cloud, const std::filesystem::path& path);

}  // namespace sfcpc

#endif
