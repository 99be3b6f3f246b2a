#ifndef SFCPC_ORACLE_HPP
#define SFCPC_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfcpc/cloud.hpp"
#include "sfcpc/neighbors.hpp"
#include "sfcpc/params.hpp"
#include "sfcpc/sort.hpp"

namespace sfcpc {

// Exact k-nearest-neighbour references. Both implementations exclude the
// query point itself, order each row nearest-first and break distance ties
// by the lower point index, so their outputs are identical and usable
// interchangeably as ground truth. When fewer than k other points exist the
// remaining slots repeat the query index, mirroring sequence_neighbors.

/// O(n^2) scan. The unambiguous baseline.
NeighborTable knn_bruteforce(const PointCloud& cloud, std::size_t k, unsigned threads = 1);

/// Uniform-grid accelerated search with ring expansion. Exact: a candidate
/// ring is only skipped once the current kth distance provably clears it.
NeighborTable knn_grid(const PointCloud& cloud, std::size_t k, unsigned threads = 1);

/// Fraction of reference neighbour entries recovered by the candidate
/// table, averaged over points. Rows are compared as sets.
double recall_at_k(const NeighborTable& candidate, const NeighborTable& reference);

/// Fraction of neighbour entries whose label matches the query point's
/// label. Requires cloud.has_labels().
double label_purity(const PointCloud& cloud, const NeighborTable& table);

/// Mean Euclidean distance from each point to its table neighbours,
/// averaged over all rows and slots.
double mean_neighbor_distance(const PointCloud& cloud, const NeighborTable& table);

/// Per-point mean of the row's neighbour distances.
std::vector<double> per_point_mean_distance(const PointCloud& cloud, const NeighborTable& table);

/// Merges the rows of several tables and keeps the k nearest distinct
/// entries per point, nearest-first with ties by lower index. Self entries
/// are dropped unless a row would otherwise come up short.
NeighborTable pool_top_k(const PointCloud& cloud, const std::vector<NeighborTable>& tables,
                         std::size_t k);

struct ViewLocality {
    double angle = 0.0;
    double recall = 0.0;
    std::optional<double> purity;
    double mean_distance = 0.0;
};

struct LocalityReport {
    std::string source;
    std::size_t points = 0;
    std::size_t k = 0;
    SortParams params;
    SortMode mode = SortMode::FloatScore;
    std::vector<double> angles;
    std::vector<ViewLocality> views;
    ViewLocality pooled;
    double oracle_mean_distance = 0.0;
};

std::string to_json(const LocalityReport& report);

}  // namespace sfcpc

#endif
