#include "sfcpc/views.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfcpc {

PointCloud rotate_z(const PointCloud& cloud, double angle) {
    if (!std::isfinite(angle)) throw std::invalid_argument("rotation angle must be finite");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    PointCloud out;
    const std::size_t n = cloud.size();
    out.x.resize(n);
    out.y.resize(n);
    out.z = cloud.z;
    out.intensity = cloud.intensity;
    out.labels = cloud.labels;
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = cloud.x[i] * c - cloud.y[i] * s;
        out.y[i] = cloud.x[i] * s + cloud.y[i] * c;
    }
    return out;
}

std::vector<double> evenly_spaced_views(std::size_t count) {
    if (count == 0) throw std::invalid_argument("need at least one view");
    std::vector<double> angles(count);
    for (std::size_t j = 0; j < count; ++j) {
        angles[j] = static_cast<double>(j) * std::numbers::pi / static_cast<double>(count);
    }
    return angles;
}

ViewSet build_views(const PointCloud& cloud, const std::vector<double>& angles,
                    const SortParams& params, SortMode mode, unsigned threads) {
    if (angles.empty()) throw std::invalid_argument("need at least one view angle");
    ViewSet set;
    set.views.reserve(angles.size());
    for (const double angle : angles) {
        View view;
        view.angle = angle;
        view.cloud = angle == 0.0 ? cloud : rotate_z(cloud, angle);
        view.perm = sort_cloud(view.cloud, params, mode, threads);
        set.views.push_back(std::move(view));
    }
    return set;
}

}  // namespace sfcpc
