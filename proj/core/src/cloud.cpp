#include "sfcpc/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sfcpc {

void PointCloud::check() const {
    const std::size_t n = x.size();
    if (y.size() != n || z.size() != n) {
        throw std::invalid_argument("point cloud coordinate columns differ in length");
    }
    if (!intensity.empty() && intensity.size() != n) {
        throw std::invalid_argument("intensity column length " + std::to_string(intensity.size()) +
                                    " does not match " + std::to_string(n) + " points");
    }
    if (!labels.empty() && labels.size() != n) {
        throw std::invalid_argument("label column length " + std::to_string(labels.size()) +
                                    " does not match " + std::to_string(n) + " points");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]) || !std::isfinite(z[i])) {
            throw std::invalid_argument("non-finite coordinate at point " + std::to_string(i));
        }
    }
}

Roi bounding_roi(const PointCloud& cloud) {
    if (cloud.size() == 0) {
        throw std::invalid_argument("cannot compute a region for an empty cloud");
    }
    const auto [x_lo, x_hi] = std::minmax_element(cloud.x.begin(), cloud.x.end());
    const auto [y_lo, y_hi] = std::minmax_element(cloud.y.begin(), cloud.y.end());
    const auto [z_lo, z_hi] = std::minmax_element(cloud.z.begin(), cloud.z.end());
    Roi roi{*x_lo, *x_hi, *y_lo, *y_hi, *z_lo, *z_hi};
    // A flat axis would make every dominance margin trivially infinite, so
    // give it token width instead.
    const double pad = 0.5;
    if (roi.x_min == roi.x_max) { roi.x_min -= pad; roi.x_max += pad; }
    if (roi.y_min == roi.y_max) { roi.y_min -= pad; roi.y_max += pad; }
    if (roi.z_min == roi.z_max) { roi.z_min -= pad; roi.z_max += pad; }
    return roi;
}

bool contains(const Roi& roi, double x, double y, double z) {
    return x >= roi.x_min && x <= roi.x_max && y >= roi.y_min && y <= roi.y_max &&
           z >= roi.z_min && z <= roi.z_max;
}

}  // namespace sfcpc
