#include <atomic>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "sfcpc/params.hpp"
#include "sfcpc/score.hpp"
#include "sfcpc/sort.hpp"

using namespace sfcpc;

TEST_CASE("cell_index rounds to nearest with ties away from zero") {
    CHECK(cell_index(0.0, 1.2) == 0);
    CHECK(cell_index(1.0, 1.2) == 1);    // 1.2 -> 1
    CHECK(cell_index(1.25, 1.0) == 1);   // nearest
    CHECK(cell_index(1.5, 1.0) == 2);    // tie away from zero
    CHECK(cell_index(2.5, 1.0) == 3);    // not banker's rounding
    CHECK(cell_index(-1.5, 1.0) == -2);
    CHECK(cell_index(-2.5, 1.0) == -3);
    CHECK(cell_index(0.25, 2.0) == 1);   // 0.5 -> 1
    CHECK(cell_index(-0.25, 2.0) == -1);
}

TEST_CASE("simple2d scorer hand values") {
    CHECK(score_simple2d(0.0, 0.0, 100.0, 1.2) == 0.0);
    CHECK(score_simple2d(1.0, 2.0, 100.0, 1.2) == 102.0);
    CHECK(score_simple2d(-1.0, 0.5, 100.0, 1.2) == -99.5);
}

TEST_CASE("full scorer hand values with default weights") {
    const SortParams p = SortParams::full_defaults();

    CHECK(score_full(0.0, 0.0, 0.0, p) == 0.0);

    // round(1.2)=1, round(2.4)=2, round(2.0)=2, rho=sqrt(5)
    const double expected = 1e10 * 1.0 + 1e5 * 2.0 + 1.0 * 2.0 + 1e-5 * std::sqrt(5.0);
    CHECK(score_full(1.0, 2.0, 0.5, p) == expected);
    CHECK(score_full(1.0, 2.0, 0.5, p) == doctest::Approx(10000200002.0000224));

    // round(-1.2) = -1, rho = 1
    CHECK(score_full(-1.0, 0.0, 0.0, p) == -1e10 + 1e-5);
}

TEST_CASE("ablation scorer puts the z term first") {
    const SortParams p = SortParams::ablation_defaults();

    CHECK(score_ablation(0.0, 0.0, 0.0, p) == 0.0);

    // k_z=1e10 on round(2.0)=2, k_x=1e5 on round(1.2)=1, k_y=1 on round(2.4)=2
    const double expected = 1e10 * 2.0 + 1e5 * 1.0 + 1.0 * 2.0 + 1e-5 * std::sqrt(5.0);
    CHECK(score_ablation(1.0, 2.0, 0.5, p) == expected);
    CHECK(score_ablation(1.0, 2.0, 0.5, p) == doctest::Approx(20000100002.0000224));

    SUBCASE("one z cell apart means one k_z step") {
        const double lo = score_ablation(0.1, 0.1, 0.1, p);
        const double hi = score_ablation(0.1, 0.1, 0.35, p);
        CHECK(hi - lo == doctest::Approx(p.k_z).epsilon(1e-9));
    }
}

TEST_CASE("swapped scorer mirrors full under x/y exchange") {
    const SortParams p = SortParams::full_defaults();
    CHECK(score_swapped(0.0, 0.0, 0.0, p) == 0.0);
    CHECK(score_swapped(2.0, 1.0, 0.5, p) == score_full(1.0, 2.0, 0.5, p));

    sfcpc::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double x = rng.uniform(-40.0, 40.0);
        const double y = rng.uniform(-40.0, 40.0);
        const double z = rng.uniform(-4.0, 10.0);
        CHECK(score_swapped(x, y, z, p) == score_full(y, x, z, p));
    }
}

TEST_CASE("score_point dispatches on the variant") {
    SortParams p = SortParams::full_defaults();
    const double x = 3.7, y = -2.1, z = 1.4;

    p.variant = ScoreVariant::Full;
    CHECK(score_point(x, y, z, p) == score_full(x, y, z, p));
    p.variant = ScoreVariant::Ablation;
    CHECK(score_point(x, y, z, p) == score_ablation(x, y, z, p));
    p.variant = ScoreVariant::Simple2d;
    CHECK(score_point(x, y, z, p) == score_simple2d(x, y, p.k_x, p.r_x));
    p.variant = ScoreVariant::Swapped;
    CHECK(score_point(x, y, z, p) == score_swapped(x, y, z, p));
}

TEST_CASE("scoring pass visits each point exactly once") {
    sfcpc::Rng rng(5);
    const Roi box{-50, 50, -50, 50, -4, 10};
    const PointCloud cloud = refs::random_cloud(777, rng, box);

    std::atomic<std::size_t> calls{0};
    std::vector<double> out;
    detail::score_each(cloud, 3, out, [&](double x, double y, double) {
        calls.fetch_add(1, std::memory_order_relaxed);
        return x + y;
    });
    CHECK(calls.load() == cloud.size());
    CHECK(out.size() == cloud.size());

    SUBCASE("compute_scores matches the per-point scorer") {
        const SortParams p = SortParams::full_defaults();
        const std::vector<double> scores = compute_scores(cloud, p, 2);
        REQUIRE(scores.size() == cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            CHECK(scores[i] == score_point(cloud.x[i], cloud.y[i], cloud.z[i], p));
        }
    }
}

TEST_CASE("compute_scores rejects non-finite coordinates by index") {
    PointCloud cloud;
    cloud.x = {0.0, 1.0, std::nan("")};
    cloud.y = {0.0, 1.0, 2.0};
    cloud.z = {0.0, 1.0, 2.0};
    try {
        compute_scores(cloud, SortParams::full_defaults());
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}
