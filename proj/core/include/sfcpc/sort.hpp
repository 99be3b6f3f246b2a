#ifndef SFCPC_SORT_HPP
#define SFCPC_SORT_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfcpc/cloud.hpp"
#include "sfcpc/parallel.hpp"
#include "sfcpc/params.hpp"
#include "sfcpc/score.hpp"

namespace sfcpc {

/// An ordering of point indices with its precomputed inverse.
/// order[p] is the original index of the point at sequence position p;
/// inverse[i] is the sequence position of original point i.
struct Permutation {
    std::vector<std::uint64_t> order;
    std::vector<std::uint64_t> inverse;

    std::size_t size() const { return order.size(); }

    static Permutation identity(std::size_t n);

    /// Bijection check plus inverse[order[p]] == p for every position.
    bool is_valid() const;
};

/// How sort_cloud compares points.
///   FloatScore - one 64-bit float score per point (the production path).
///   ExactKey   - per-level integer cells compared lexicographically, then
///                the trailing continuous term. Immune to the precision
///                limits of packing every level into a single double.
/// Both modes break remaining ties by original index and must produce
/// identical permutations on a ROI that passes validate_params.
enum class SortMode { FloatScore, ExactKey };

const char* to_string(SortMode m);

namespace detail {

/// Scoring pass: applies the scorer to each point exactly once. Kept as a
/// template so tests can instrument the scorer.
template <typename Scorer>
void score_each(const PointCloud& cloud, unsigned threads, std::vector<double>& out,
                Scorer&& scorer) {
    const std::size_t n = cloud.size();
    out.resize(n);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out[i] = scorer(cloud.x[i], cloud.y[i], cloud.z[i]);
    });
}

/// The trailing continuous score term: radial distance for the 3D variants,
/// raw y for Simple2d. Used both as the exact key's last level and as the
/// float path's tie refinement.
void compute_tails(const PointCloud& cloud, const SortParams& params, unsigned threads,
                   std::vector<double>& out);

void check_finite(const PointCloud& cloud);

}  // namespace detail

/// One O(n) scoring pass over the cloud.
/// Throws std::invalid_argument on a non-finite coordinate, naming the index.
std::vector<double> compute_scores(const PointCloud& cloud, const SortParams& params,
                                   unsigned threads = 1);

/// Sorts points by ascending score. Equal keys keep original index order.
Permutation sort_cloud(const PointCloud& cloud, const SortParams& params,
                       SortMode mode = SortMode::FloatScore, unsigned threads = 1);

/// Swaps order and inverse, mapping sequence data back to original order.
Permutation invert(const Permutation& perm);

/// Flat binary array of 64-bit little-endian unsigned indices (order only;
/// the inverse is rebuilt on load).
void save_permutation(const Permutation& perm, const std::filesystem::path& path);

/// Same, plus a JSON sidecar at path + ".json" recording the point count,
/// the producing params and the sort mode.
void save_permutation(const Permutation& perm, const std::filesystem::path& path,
                      const SortParams& params, SortMode mode);

Permutation load_permutation(const std::filesystem::path& path);

}  // namespace sfcpc

#endif
