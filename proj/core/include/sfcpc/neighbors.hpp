#ifndef SFCPC_NEIGHBORS_HPP
#define SFCPC_NEIGHBORS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sfcpc/cloud.hpp"
#include "sfcpc/sort.hpp"
#include "sfcpc/views.hpp"

namespace sfcpc {

/// k neighbours per point, row i holding the neighbours of original point i
/// as original point indices. Rows are contiguous: entry(i, j) = at[i*k + j].
struct NeighborTable {
    std::size_t k = 0;
    std::vector<std::uint64_t> at;

    std::size_t size() const { return k == 0 ? 0 : at.size() / k; }
    std::uint64_t entry(std::size_t i, std::size_t j) const { return at[i * k + j]; }
};

/// Neighbours by proximity along the sorted sequence. For the point at
/// sequence position p the candidates are taken nearest-first by
/// |position delta|, preferring the earlier position on equal delta, so the
/// visit order is p-1, p+1, p-2, p+2, ... At the sequence ends the window
/// slides inward, which keeps every row at exactly k entries. When the cloud
/// has at most k points the remaining slots repeat the point itself.
NeighborTable sequence_neighbors(const Permutation& perm, std::size_t k);

/// Row-major float32 feature matrix, one row per original point.
struct FeatureBlock {
    std::size_t dim = 0;
    std::vector<float> values;
    std::vector<std::string> columns;

    std::size_t rows() const { return dim == 0 ? 0 : values.size() / dim; }
    const float* row(std::size_t i) const { return values.data() + i * dim; }
    float* row(std::size_t i) { return values.data() + i * dim; }
};

/// Column names for a cloud/table pairing: x, y, z, then dx1, dy1, dz1 per
/// neighbour slot, then any extra per-point attributes (intensity).
std::vector<std::string> feature_columns(const PointCloud& cloud, std::size_t k);

/// Neighbourhood embedding: each row is the point's own coordinates,
/// followed by the offset (p_i - p_i^j) to each of its k sequence
/// neighbours, followed by the point's remaining attributes. Row count and
/// indexing follow the original point order.
FeatureBlock encode_nee(const PointCloud& cloud, const NeighborTable& table);

/// Reorders block rows from original order into sequence order, row s
/// becoming the features of original point perm.order[s].
FeatureBlock to_sequence_order(const FeatureBlock& block, const Permutation& perm);

/// Element-wise sum over one sequence-ordered block per view, resolved back
/// to original point order through each view's permutation. Accumulates in
/// double before narrowing. All blocks must share rows() and dim.
FeatureBlock fuse_views(const ViewSet& views, const std::vector<FeatureBlock>& blocks);

/// CSV export: header row from block.columns, one data row per point,
/// float32 values printed to round-trip precision.
void save_feature_csv(const FeatureBlock& block, const std::filesystem::path& path);

/// Raw export: rows() * dim float32 values, little-endian, row-major, plus a
/// JSON sidecar at path + ".json" recording rows, dim and column names.
void save_feature_bin(const FeatureBlock& block, const std::filesystem::path& path);

}  // namespace sfcpc

#endif
