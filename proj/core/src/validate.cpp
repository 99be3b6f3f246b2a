#include "sfcpc/validate.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sfcpc/score.hpp"

namespace sfcpc {

std::string ParamsValidation::message() const {
    std::ostringstream out;
    if (ok) {
        out << "params dominate over the region; tightest level '" << level << "' has weight "
            << weight << " against swing " << swing << " (margin " << margin << ")";
    } else {
        out << "level '" << level << "' weight " << weight
            << " cannot cover the lower-term swing " << swing << " over the region (margin "
            << margin << ")";
    }
    return out.str();
}

namespace {

struct Level {
    char axis;
    double weight;
    double lo, hi;  // axis range over the ROI
    double r;
};

double cell_span(const Level& lv) {
    return static_cast<double>(cell_index(lv.hi, lv.r) - cell_index(lv.lo, lv.r));
}

}  // namespace

ParamsValidation validate_params(const SortParams& params, const Roi& roi) {
    if (!roi.valid()) {
        throw std::invalid_argument("region of interest must satisfy min < max on every axis");
    }
    if (!params.positive()) {
        throw std::invalid_argument("params must all be positive");
    }

    if (params.variant == ScoreVariant::Simple2d) {
        ParamsValidation v;
        v.level = 'x';
        v.weight = params.k_x;
        v.swing = (roi.y_max - roi.y_min) * params.r_x;
        v.margin = v.weight - v.swing;
        v.ok = v.margin > 0.0;
        return v;
    }

    const Level x{'x', params.k_x, roi.x_min, roi.x_max, params.r_x};
    const Level y{'y', params.k_y, roi.y_min, roi.y_max, params.r_y};
    const Level z{'z', params.k_z, roi.z_min, roi.z_max, params.r_z};

    std::array<Level, 3> levels{x, y, z};
    switch (params.variant) {
        case ScoreVariant::Ablation: levels = {z, x, y}; break;
        case ScoreVariant::Swapped:
            levels = {y, x, z};
            levels[0].weight = params.k_x;
            levels[1].weight = params.k_y;
            break;
        default: break;
    }

    // Worst-case radial spread: the farthest ROI corner from the z axis.
    const double rho_max =
        std::hypot(std::max(std::abs(roi.x_min), std::abs(roi.x_max)),
                   std::max(std::abs(roi.y_min), std::abs(roi.y_max)));
    const double rho_swing = params.k_rho * rho_max;

    ParamsValidation tightest;
    bool first = true;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        double swing = rho_swing;
        for (std::size_t j = i + 1; j < levels.size(); ++j) {
            swing += levels[j].weight * cell_span(levels[j]);
        }
        ParamsValidation v;
        v.level = levels[i].axis;
        v.weight = levels[i].weight;
        v.swing = swing;
        v.margin = v.weight - swing;
        v.ok = v.margin > 0.0;
        if (!v.ok) return v;
        if (first || v.margin < tightest.margin) {
            tightest = v;
            first = false;
        }
    }
    return tightest;
}

}  // namespace sfcpc
