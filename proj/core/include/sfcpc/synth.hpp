#ifndef SFCPC_SYNTH_HPP
#define SFCPC_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sfcpc/cloud.hpp"

namespace sfcpc {

/// A solid vertical cylinder of same-class points standing on the ground.
struct PillarSpec {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.3;
    double height = 2.0;
    std::uint32_t label = 1;
};

/// Description of a synthetic labeled scene: a square patch of class-0
/// ground with pillar objects standing on it.
struct SceneSpec {
    double ground_extent = 50.0;  // ground covers [-extent, extent] in x and y
    std::size_t ground_points = 0;
    std::vector<PillarSpec> pillars;
    std::size_t points_per_object = 200;
    double noise_sigma = 0.0;  // gaussian jitter applied to every coordinate

    /// Throws std::invalid_argument for non-positive sizes or counts, or
    /// when two pillars overlap (centers closer than the radius sum), which
    /// would make ground-truth purity ambiguous.
    void check() const;
};

/// Parses a scene description from JSON text. Unknown keys are rejected so
/// typos surface instead of silently producing a default scene.
SceneSpec scene_from_json(const std::string& text);

std::string to_json(const SceneSpec& spec);

/// Generates the scene deterministically from the seed. Ground points are
/// uniform on the ground square at z=0 with label 0; each pillar
/// contributes points_per_object points uniform in its cylinder with the
/// pillar's label. Intensity is uniform in [0,1). Coordinates are rounded
/// through float32 so the cloud survives a scan-file round trip bit-exactly.
PointCloud synth_scene(const SceneSpec& spec, std::uint64_t seed);

}  // namespace sfcpc

#endif
