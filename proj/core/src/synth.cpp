#include "sfcpc/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "sfcpc/rng.hpp"

namespace sfcpc {

void SceneSpec::check() const {
    if (ground_extent <= 0.0) throw std::invalid_argument("ground_extent must be positive");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise_sigma must be non-negative");
    if (!pillars.empty() && points_per_object == 0) {
        throw std::invalid_argument("points_per_object must be positive");
    }
    for (std::size_t i = 0; i < pillars.size(); ++i) {
        const PillarSpec& p = pillars[i];
        if (p.radius <= 0.0 || p.height <= 0.0) {
            throw std::invalid_argument("pillar " + std::to_string(i) +
                                        " needs positive radius and height");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const PillarSpec& q = pillars[j];
            const double d = std::hypot(p.cx - q.cx, p.cy - q.cy);
            if (d < p.radius + q.radius) {
                throw std::invalid_argument("pillars " + std::to_string(j) + " and " +
                                            std::to_string(i) + " overlap");
            }
        }
    }
}

SceneSpec scene_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("scene JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("scene JSON must be an object");

    SceneSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "ground_extent") {
            spec.ground_extent = value.get<double>();
        } else if (key == "ground_points") {
            spec.ground_points = value.get<std::size_t>();
        } else if (key == "points_per_object") {
            spec.points_per_object = value.get<std::size_t>();
        } else if (key == "noise_sigma") {
            spec.noise_sigma = value.get<double>();
        } else if (key == "pillars") {
            for (const auto& pj : value) {
                PillarSpec p;
                for (const auto& [pk, pv] : pj.items()) {
                    if (pk == "cx") p.cx = pv.get<double>();
                    else if (pk == "cy") p.cy = pv.get<double>();
                    else if (pk == "radius") p.radius = pv.get<double>();
                    else if (pk == "height") p.height = pv.get<double>();
                    else if (pk == "label") p.label = pv.get<std::uint32_t>();
                    else throw std::invalid_argument("unknown pillar field \"" + pk + "\"");
                }
                spec.pillars.push_back(p);
            }
        } else {
            throw std::invalid_argument("unknown scene field \"" + key + "\"");
        }
    }
    spec.check();
    return spec;
}

std::string to_json(const SceneSpec& spec) {
    nlohmann::json j;
    j["ground_extent"] = spec.ground_extent;
    j["ground_points"] = spec.ground_points;
    j["points_per_object"] = spec.points_per_object;
    j["noise_sigma"] = spec.noise_sigma;
    j["pillars"] = nlohmann::json::array();
    for (const PillarSpec& p : spec.pillars) {
        j["pillars"].push_back({{"cx", p.cx},
                                {"cy", p.cy},
                                {"radius", p.radius},
                                {"height", p.height},
                                {"label", p.label}});
    }
    return j.dump();
}

namespace {

// Narrowing keeps every emitted coordinate representable in the scan file
// format, so save + load is an exact identity.
double through_f32(double v) { return static_cast<double>(static_cast<float>(v)); }

}  // namespace

PointCloud synth_scene(const SceneSpec& spec, std::uint64_t seed) {
    spec.check();
    Rng rng(seed);
    PointCloud cloud;
    const std::size_t total = spec.ground_points + spec.pillars.size() * spec.points_per_object;
    cloud.reserve(total);
    cloud.intensity.reserve(total);
    cloud.labels.reserve(total);

    auto emit = [&](double x, double y, double z, std::uint32_t label) {
        if (spec.noise_sigma > 0.0) {
            x += rng.gaussian(spec.noise_sigma);
            y += rng.gaussian(spec.noise_sigma);
            z += rng.gaussian(spec.noise_sigma);
        }
        cloud.x.push_back(through_f32(x));
        cloud.y.push_back(through_f32(y));
        cloud.z.push_back(through_f32(z));
        cloud.intensity.push_back(through_f32(rng.uniform01()));
        cloud.labels.push_back(label);
    };

    for (std::size_t i = 0; i < spec.ground_points; ++i) {
        emit(rng.uniform(-spec.ground_extent, spec.ground_extent),
             rng.uniform(-spec.ground_extent, spec.ground_extent), 0.0, 0);
    }
    for (const PillarSpec& p : spec.pillars) {
        // Margins keep float narrowing from pushing a rim point past the
        // stated radius or a top point up to the exact height.
        const double reach = p.radius * (1.0 - 1e-3);
        const double top = p.height * (1.0 - 1e-3);
        for (std::size_t i = 0; i < spec.points_per_object; ++i) {
            // Area-uniform radius so the disk is filled evenly.
            const double r = reach * std::sqrt(rng.uniform01());
            const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
            emit(p.cx + r * std::cos(phi), p.cy + r * std::sin(phi),
                 rng.uniform(0.0, top), p.label);
        }
    }
    return cloud;
}

}  // namespace sfcpc
