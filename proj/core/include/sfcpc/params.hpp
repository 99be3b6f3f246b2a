#ifndef SFCPC_PARAMS_HPP
#define SFCPC_PARAMS_HPP

#include <string>

namespace sfcpc {

/// Which scoring formula drives the ordering.
///   Full     - x cells, then y cells, then z cells, then radial distance
///              (height-first traversal inside each xy pillar).
///   Ablation - z cells dominate, then x, then y, then radial distance
///              (height slabs instead of pillars).
///   Simple2d - x cells then raw y; the 2D teaching case.
///   Swapped  - Full with the x and y priorities exchanged.
enum class ScoreVariant { Full, Ablation, Simple2d, Swapped };

const char* to_string(ScoreVariant v);
ScoreVariant variant_from_string(const std::string& s);

/// Scoring hyperparameters: k_* are the per-level weights, r_* the inverse
/// cell widths in 1/m. Weights must follow the variant's priority order
/// (Full: k_x > k_y > k_z > k_rho, Ablation: k_z > k_x > k_y > k_rho);
/// validate_params checks the stronger dominance condition against a ROI.
struct SortParams {
    double k_x = 1e10;
    double k_y = 1e5;
    double k_z = 1.0;
    double k_rho = 1e-5;
    double r_x = 1.2;
    double r_y = 1.2;
    double r_z = 4.0;
    ScoreVariant variant = ScoreVariant::Full;

    /// Default weights and cell sizes for the height-first scorer.
    static SortParams full_defaults() { return SortParams{}; }

    /// Same magnitudes reassigned so z dominates; cell sizes unchanged.
    static SortParams ablation_defaults() {
        SortParams p;
        p.k_z = 1e10;
        p.k_x = 1e5;
        p.k_y = 1.0;
        p.k_rho = 1e-5;
        p.variant = ScoreVariant::Ablation;
        return p;
    }

    bool positive() const {
        return k_x > 0 && k_y > 0 && k_z > 0 && k_rho > 0 && r_x > 0 && r_y > 0 &&
               r_z > 0;
    }
};

std::string to_json(const SortParams& p);
SortParams params_from_json(const std::string& text);

}  // namespace sfcpc

#endif
