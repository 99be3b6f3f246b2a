#ifndef SFCPC_VALIDATE_HPP
#define SFCPC_VALIDATE_HPP

#include <string>

#include "sfcpc/cloud.hpp"
#include "sfcpc/params.hpp"

namespace sfcpc {

/// Outcome of the hierarchical dominance check. When ok is false, level
/// names the first (highest-priority) level whose weight step cannot cover
/// the swing of all lower-priority terms over the ROI; margin = weight -
/// swing is then <= 0. When ok, the fields describe the tightest level.
struct ParamsValidation {
    bool ok = true;
    char level = 0;  // 'x', 'y' or 'z'; 0 when no level applies
    double weight = 0.0;
    double swing = 0.0;
    double margin = 0.0;

    std::string message() const;
};

/// Checks that the weights sort strictly cell by cell everywhere inside the
/// ROI: at each level of the variant's priority order, the step of one cell
/// (weight * 1) must exceed the maximum combined swing of every
/// lower-priority term. For Simple2d this is exactly the 2D condition
/// k_x > (y_max - y_min) * r_x.
/// Throws std::invalid_argument for an invalid ROI or non-positive params.
ParamsValidation validate_params(const SortParams& params, const Roi& roi);

}  // namespace sfcpc

#endif
