#ifndef SFCPC_CLOUD_HPP
#define SFCPC_CLOUD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfcpc {

/// Raised for unreadable or malformed files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Columnar point cloud. Coordinates are meters. Intensity and labels are
/// optional; an empty vector means the attribute is absent. Treated as
/// immutable once filled, so sharing across threads for reading is safe.
struct PointCloud {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
    std::vector<double> intensity;
    std::vector<std::uint32_t> labels;

    std::size_t size() const { return x.size(); }
    bool empty() const { return x.empty(); }
    bool has_intensity() const { return !intensity.empty(); }
    bool has_labels() const { return !labels.empty(); }

    void reserve(std::size_t n) {
        x.reserve(n);
        y.reserve(n);
        z.reserve(n);
    }

    /// Checks the columnar invariants (matching lengths, finite coordinates).
    /// Throws std::invalid_argument naming the first offending point.
    void check() const;
};

/// Axis-aligned region of interest, min < max on every axis.
struct Roi {
    double x_min, x_max;
    double y_min, y_max;
    double z_min, z_max;

    bool valid() const {
        return x_min < x_max && y_min < y_max && z_min < z_max;
    }
};

/// Tight bounding box of the cloud; degenerate axes are padded by half a
/// meter each way so the result always satisfies the Roi invariant.
Roi bounding_roi(const PointCloud& cloud);

bool contains(const Roi& roi, double x, double y, double z);

}  // namespace sfcpc

#endif
