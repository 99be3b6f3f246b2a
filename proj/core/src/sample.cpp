#include "sfcpc/sample.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sfcpc {

std::vector<std::uint64_t> sample_indices(std::size_t n, std::size_t count, Rng& rng) {
    if (count == 0) throw std::invalid_argument("sample target must be positive");
    if (count >= n) {
        std::vector<std::uint64_t> all(n);
        std::iota(all.begin(), all.end(), std::uint64_t{0});
        return all;
    }
    // Partial Fisher-Yates: the first count slots end up as a uniform draw
    // without replacement.
    std::vector<std::uint64_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::uint64_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

PointCloud gather(const PointCloud& cloud, const std::vector<std::uint64_t>& indices) {
    PointCloud out;
    out.reserve(indices.size());
    if (cloud.has_intensity()) out.intensity.reserve(indices.size());
    if (cloud.has_labels()) out.labels.reserve(indices.size());
    for (const std::uint64_t i : indices) {
        out.x.push_back(cloud.x[i]);
        out.y.push_back(cloud.y[i]);
        out.z.push_back(cloud.z[i]);
        if (cloud.has_intensity()) out.intensity.push_back(cloud.intensity[i]);
        if (cloud.has_labels()) out.labels.push_back(cloud.labels[i]);
    }
    return out;
}

PointCloud sample_points(const PointCloud& cloud, std::size_t count, Rng& rng) {
    const auto indices = sample_indices(cloud.size(), count, rng);
    if (indices.size() == cloud.size()) return cloud;
    return gather(cloud, indices);
}

}  // namespace sfcpc
