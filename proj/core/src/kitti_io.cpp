#include "sfcpc/kitti_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

namespace sfcpc {

namespace {

std::vector<std::byte> read_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary | std::ios::ate);
    if (!file) throw IoError("cannot open " + path.string());
    const std::streamsize size = file.tellg();
    file.seekg(0);
    std::vector<std::byte> bytes(static_cast<std::size_t>(size));
    file.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!file) throw IoError("short read from " + path.string());
    return bytes;
}

std::uint32_t read_u32le(const std::byte* p) {
    return static_cast<std::uint32_t>(std::to_integer<std::uint32_t>(p[0]) |
                                      (std::to_integer<std::uint32_t>(p[1]) << 8) |
                                      (std::to_integer<std::uint32_t>(p[2]) << 16) |
                                      (std::to_integer<std::uint32_t>(p[3]) << 24));
}

float read_f32le(const std::byte* p) { return std::bit_cast<float>(read_u32le(p)); }

void append_u32le(std::vector<std::byte>& out, std::uint32_t v) {
    out.push_back(static_cast<std::byte>(v & 0xffu));
    out.push_back(static_cast<std::byte>((v >> 8) & 0xffu));
    out.push_back(static_cast<std::byte>((v >> 16) & 0xffu));
    out.push_back(static_cast<std::byte>((v >> 24) & 0xffu));
}

void append_f32le(std::vector<std::byte>& out, float v) {
    append_u32le(out, std::bit_cast<std::uint32_t>(v));
}

void write_file(const std::filesystem::path& path, const std::vector<std::byte>& bytes) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) throw IoError("short write to " + path.string());
}

}  // namespace

PointCloud parse_kitti_bin(std::span<const std::byte> bytes, const std::string& source) {
    if (bytes.size() % 16 != 0) {
        throw IoError(source + ": size " + std::to_string(bytes.size()) +
                      " is not a multiple of 16 bytes");
    }
    const std::size_t n = bytes.size() / 16;
    PointCloud cloud;
    cloud.reserve(n);
    cloud.intensity.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::byte* p = bytes.data() + i * 16;
        const float x = read_f32le(p);
        const float y = read_f32le(p + 4);
        const float z = read_f32le(p + 8);
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw IoError(source + ": non-finite coordinate at point " + std::to_string(i));
        }
        cloud.x.push_back(x);
        cloud.y.push_back(y);
        cloud.z.push_back(z);
        cloud.intensity.push_back(read_f32le(p + 12));
    }
    return cloud;
}

PointCloud load_kitti_bin(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_kitti_bin(bytes, path.string());
}

PointCloud load_labels(const std::filesystem::path& path, PointCloud cloud) {
    const auto bytes = read_file(path);
    if (bytes.size() % 4 != 0) {
        throw IoError(path.string() + ": size " + std::to_string(bytes.size()) +
                      " is not a multiple of 4 bytes");
    }
    const std::size_t n = bytes.size() / 4;
    if (n != cloud.size()) {
        throw IoError(path.string() + ": " + std::to_string(n) + " labels for " +
                      std::to_string(cloud.size()) + " points");
    }
    cloud.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Low half is the semantic class; the high half carries the instance
        // id, which nothing downstream uses.
        cloud.labels[i] = read_u32le(bytes.data() + i * 4) & 0xffffu;
    }
    return cloud;
}

void save_kitti_bin(const PointCloud& cloud, const std::filesystem::path& path) {
    cloud.check();
    std::vector<std::byte> bytes;
    bytes.reserve(cloud.size() * 16);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        append_f32le(bytes, static_cast<float>(cloud.x[i]));
        append_f32le(bytes, static_cast<float>(cloud.y[i]));
        append_f32le(bytes, static_cast<float>(cloud.z[i]));
        append_f32le(bytes, cloud.has_intensity() ? static_cast<float>(cloud.intensity[i]) : 0.0f);
    }
    write_file(path, bytes);
}

void save_labels(const PointCloud& cloud, const std::filesystem::path& path) {
    if (!cloud.has_labels()) {
        throw std::invalid_argument("cloud has no labels to save");
    }
    std::vector<std::byte> bytes;
    bytes.reserve(cloud.size() * 4);
    for (std::size_t i = 0; i < cloud.size(); ++i) append_u32le(bytes, cloud.labels[i]);
    write_file(path, bytes);
}

}  // namespace sfcpc
