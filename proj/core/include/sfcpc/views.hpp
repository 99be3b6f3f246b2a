#ifndef SFCPC_VIEWS_HPP
#define SFCPC_VIEWS_HPP

#include <array>
#include <numbers>
#include <vector>

#include "sfcpc/cloud.hpp"
#include "sfcpc/params.hpp"
#include "sfcpc/sort.hpp"

namespace sfcpc {

inline constexpr std::array<double, 4> kDefaultViewAngles = {
    0.0,
    1.0 * std::numbers::pi / 4.0,
    2.0 * std::numbers::pi / 4.0,
    3.0 * std::numbers::pi / 4.0,
};

/// count angles evenly spaced over [0, pi): j*pi/count. count=4 reproduces
/// kDefaultViewAngles.
std::vector<double> evenly_spaced_views(std::size_t count);

/// Rotates every point about the z axis by angle radians:
///   x' = x cos a - y sin a
///   y' = x sin a + y cos a
/// z, intensity and labels pass through unchanged.
PointCloud rotate_z(const PointCloud& cloud, double angle);

/// One rotated copy of the input together with its sort permutation. The
/// rotated coordinates are materialized because neighbor offsets are taken
/// in the frame where the sequence exists. The permutation maps sequence
/// position to original point index, so order[0] is the original index of
/// the first point along the curve.
struct View {
    double angle = 0.0;
    PointCloud cloud;
    Permutation perm;
};

struct ViewSet {
    std::vector<View> views;

    std::size_t size() const { return views.size(); }
    const View& operator[](std::size_t i) const { return views[i]; }
};

/// Sorts a rotated copy of the cloud per angle. The rotation only feeds the
/// scores; callers keep the original cloud and address it through each
/// view's permutation.
ViewSet build_views(const PointCloud& cloud, const std::vector<double>& angles,
                    const SortParams& params, SortMode mode = SortMode::FloatScore,
                    unsigned threads = 1);

}  // namespace sfcpc

#endif
