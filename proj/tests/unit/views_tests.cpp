#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "sfcpc/score.hpp"
#include "sfcpc/views.hpp"

using namespace sfcpc;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("rotation basics") {
    PointCloud cloud;
    cloud.x = {1.0};
    cloud.y = {0.0};
    cloud.z = {0.5};
    cloud.intensity = {0.25};
    cloud.labels = {7};

    SUBCASE("quarter turn") {
        const PointCloud turned = rotate_z(cloud, kPi / 2.0);
        CHECK(std::abs(turned.x[0]) <= 1e-9);
        CHECK(turned.y[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(turned.z[0] == 0.5);
        CHECK(turned.intensity[0] == 0.25);
        CHECK(turned.labels[0] == 7);
    }

    SUBCASE("zero angle is a bit-exact copy") {
        const PointCloud same = rotate_z(cloud, 0.0);
        CHECK(same.x == cloud.x);
        CHECK(same.y == cloud.y);
    }

    SUBCASE("non-finite angle is rejected") {
        CHECK_THROWS_AS(rotate_z(cloud, std::nan("")), std::invalid_argument);
    }
}

TEST_CASE("rotation preserves radius, distances and round trips") {
    Rng rng(41);
    const Roi box{-900, 900, -900, 900, -10, 10};
    const PointCloud cloud = refs::random_cloud(400, rng, box);

    for (const double angle : {0.3, kPi / 4.0, kPi / 2.0, 2.1, -0.7}) {
        const PointCloud turned = rotate_z(cloud, angle);

        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const double before = radial_distance(cloud.x[i], cloud.y[i]);
            const double after = radial_distance(turned.x[i], turned.y[i]);
            CHECK(std::abs(after - before) <= 1e-9);
        }

        const PointCloud back = rotate_z(turned, -angle);
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            CHECK(std::abs(back.x[i] - cloud.x[i]) <= 1e-9);
            CHECK(std::abs(back.y[i] - cloud.y[i]) <= 1e-9);
        }

        for (std::size_t i = 1; i < 40; ++i) {
            const auto dist = [](const PointCloud& c, std::size_t a, std::size_t b) {
                return std::hypot(c.x[a] - c.x[b], c.y[a] - c.y[b], c.z[a] - c.z[b]);
            };
            CHECK(std::abs(dist(turned, i - 1, i) - dist(cloud, i - 1, i)) <= 1e-9);
        }
    }
}

TEST_CASE("evenly spaced views reproduce the default four") {
    const std::vector<double> four = evenly_spaced_views(4);
    REQUIRE(four.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) CHECK(four[j] == kDefaultViewAngles[j]);

    const std::vector<double> one = evenly_spaced_views(1);
    CHECK(one == std::vector<double>{0.0});

    const std::vector<double> eight = evenly_spaced_views(8);
    CHECK(eight.size() == 8);
    CHECK(eight[4] == kDefaultViewAngles[2]);  // pi/2 shows up again

    CHECK_THROWS_AS(evenly_spaced_views(0), std::invalid_argument);
}

TEST_CASE("build_views") {
    Rng rng(42);
    const SortParams p = SortParams::full_defaults();
    const PointCloud cloud = refs::cell_safe_cloud(600, rng, p, 40);

    SUBCASE("zero rotation equals a plain sort") {
        const ViewSet set = build_views(cloud, {0.0}, p);
        REQUIRE(set.size() == 1);
        CHECK(set[0].angle == 0.0);
        CHECK(set[0].cloud.x == cloud.x);
        CHECK(set[0].perm.order == sort_cloud(cloud, p).order);
    }

    SUBCASE("default four angles give four valid permutations") {
        const std::vector<double> angles(kDefaultViewAngles.begin(), kDefaultViewAngles.end());
        const ViewSet set = build_views(cloud, angles, p);
        REQUIRE(set.size() == 4);
        for (std::size_t v = 0; v < 4; ++v) {
            CHECK(set[v].angle == angles[v]);
            CHECK(set[v].perm.size() == cloud.size());
            CHECK(set[v].perm.is_valid());
            CHECK(set[v].cloud.size() == cloud.size());
        }
    }

    SUBCASE("an empty angle list is rejected") {
        CHECK_THROWS_AS(build_views(cloud, {}, p), std::invalid_argument);
    }
}

TEST_CASE("a 90-degree symmetric cloud keeps its pillar census across views") {
    // Four rotated copies of a base cluster set make the cloud invariant
    // under a quarter turn, so the 0 and pi/2 views must bin identically.
    Rng rng(43);
    const SortParams p = SortParams::full_defaults();
    PointCloud cloud;
    for (int i = 0; i < 120; ++i) {
        const double x = (static_cast<double>(rng.bounded(30)) + 5.0 +
                          rng.uniform(-0.45, 0.45)) / p.r_x;
        const double y = (static_cast<double>(rng.bounded(30)) + 5.0 +
                          rng.uniform(-0.45, 0.45)) / p.r_y;
        const double z = rng.uniform(0.0, 2.0);
        const double quarters[4][2] = {{x, y}, {-y, x}, {-x, -y}, {y, -x}};
        for (const auto& q : quarters) {
            cloud.x.push_back(q[0]);
            cloud.y.push_back(q[1]);
            cloud.z.push_back(z);
        }
    }

    const ViewSet set = build_views(cloud, {0.0, kPi / 2.0}, p);
    const auto census = [&](const View& view) {
        std::map<std::pair<long long, long long>, std::size_t> bins;
        for (std::size_t i = 0; i < view.cloud.size(); ++i) {
            ++bins[{cell_index(view.cloud.x[i], p.r_x), cell_index(view.cloud.y[i], p.r_y)}];
        }
        std::vector<std::size_t> sizes;
        for (const auto& [cell, count] : bins) sizes.push_back(count);
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    };
    CHECK(census(set[0]) == census(set[1]));
}

TEST_CASE("swapped scorer equals full on the axis-exchanged cloud") {
    Rng rng(44);
    const SortParams full = SortParams::full_defaults();
    SortParams swapped = full;
    swapped.variant = ScoreVariant::Swapped;

    for (int trial = 0; trial < 20; ++trial) {
        const PointCloud cloud = refs::cell_safe_cloud(200, rng, full, 30);

        // Exchanging the x and y columns is bit-exact.
        CHECK(sort_cloud(refs::swap_xy(cloud), full).order ==
              sort_cloud(cloud, swapped).order);

        // The -90 degree rotation lands on the same ordering once the sign
        // of its second coordinate is fixed; cells are boundary-safe so the
        // rotation's floating-point wobble cannot move any point.
        const PointCloud turned = refs::mirror_y(rotate_z(cloud, -kPi / 2.0));
        CHECK(sort_cloud(turned, full).order == sort_cloud(cloud, swapped).order);
    }
}
