#ifndef SFCPC_SAMPLE_HPP
#define SFCPC_SAMPLE_HPP

#include <cstdint>
#include <vector>

#include "sfcpc/cloud.hpp"
#include "sfcpc/rng.hpp"

namespace sfcpc {

/// Uniform sample without replacement of min(count, n) indices, returned in
/// ascending order so the sampled cloud preserves the input ordering.
std::vector<std::uint64_t> sample_indices(std::size_t n, std::size_t count, Rng& rng);

/// Gathers the given rows from every attribute the cloud carries.
PointCloud gather(const PointCloud& cloud, const std::vector<std::uint64_t>& indices);

/// Convenience wrapper: sample_indices followed by gather.
PointCloud sample_points(const PointCloud& cloud, std::size_t count, Rng& rng);

}  // namespace sfcpc

#endif
