#ifndef SFCPC_SCORE_HPP
#define SFCPC_SCORE_HPP

#include <cmath>
#include <cstdint>

#include "sfcpc/params.hpp"

namespace sfcpc {

/// Cell index of a coordinate under inverse cell width r. Cells are the
/// half-open intervals [(m-0.5)/r, (m+0.5)/r); exact boundaries resolve
/// away from zero, which is what std::round/llround do.
inline std::int64_t cell_index(double v, double r) { return std::llround(v * r); }

/// Distance from the z axis, the lowest-priority score term.
inline double radial_distance(double x, double y) { return std::sqrt(x * x + y * y); }

/// 2D teaching case: cells along x, raw y inside each cell.
inline double score_simple2d(double x, double y, double k_x, double r_x) {
    return k_x * std::round(x * r_x) + y;
}

/// Height-first 3D scorer: sorts cell by cell along x, inside that along y,
/// inside each xy pillar along z, and finally by radial distance.
inline double score_full(double x, double y, double z, const SortParams& p) {
    return p.k_x * std::round(x * p.r_x) + p.k_y * std::round(y * p.r_y) +
           p.k_z * std::round(z * p.r_z) + p.k_rho * radial_distance(x, y);
}

/// Height-last alternative: z cells dominate, so the sequence walks
/// horizontal slabs instead of vertical pillars.
inline double score_ablation(double x, double y, double z, const SortParams& p) {
    return p.k_z * std::round(z * p.r_z) + p.k_x * std::round(x * p.r_x) +
           p.k_y * std::round(y * p.r_y) + p.k_rho * radial_distance(x, y);
}

/// Full scorer with the x/y priorities exchanged: y takes the dominant
/// weight, x the secondary one. Sorting with this on the original cloud
/// corresponds to sorting an axis-exchanged copy with score_full.
inline double score_swapped(double x, double y, double z, const SortParams& p) {
    return p.k_x * std::round(y * p.r_y) + p.k_y * std::round(x * p.r_x) +
           p.k_z * std::round(z * p.r_z) + p.k_rho * radial_distance(x, y);
}

/// Dispatch on p.variant.
inline double score_point(double x, double y, double z, const SortParams& p) {
    switch (p.variant) {
        case ScoreVariant::Ablation:
            return score_ablation(x, y, z, p);
        case ScoreVariant::Simple2d:
            return score_simple2d(x, y, p.k_x, p.r_x);
        case ScoreVariant::Swapped:
            return score_swapped(x, y, z, p);
        case ScoreVariant::Full:
        default:
            return score_full(x, y, z, p);
    }
}

}  // namespace sfcpc

#endif
