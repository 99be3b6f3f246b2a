#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "schema_check.hpp"
#include "sfcpc/runner.hpp"
#include "sfcpc/sample.hpp"
#include "sfcpc/synth.hpp"
#include "sfcpc/views.hpp"

using namespace sfcpc;

namespace {

PointCloud test_cloud(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return refs::random_cloud(n, rng, Roi{-40, 40, -40, 40, -3, 6});
}

}  // namespace

TEST_CASE("prepare_cloud samples and validates") {
    const PointCloud cloud = test_cloud(2000, 11);

    SUBCASE("small targets subsample deterministically") {
        RunConfig cfg;
        cfg.sample = 300;
        cfg.seed = 7;
        const PointCloud a = prepare_cloud(cloud, cfg);
        const PointCloud b = prepare_cloud(cloud, cfg);
        CHECK(a.size() == 300);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
        CHECK(a.z == b.z);

        cfg.seed = 8;
        const PointCloud c = prepare_cloud(cloud, cfg);
        CHECK(c.x != a.x);
    }

    SUBCASE("a large target keeps the whole cloud") {
        RunConfig cfg;
        cfg.sample = 1 << 20;
        const PointCloud whole = prepare_cloud(cloud, cfg);
        CHECK(whole.size() == cloud.size());
        CHECK(whole.x == cloud.x);
    }

    SUBCASE("weak weights are rejected with the failing level named") {
        RunConfig cfg;
        cfg.params.k_x = 10.0;
        CHECK_THROWS_WITH_AS(prepare_cloud(cloud, cfg),
                             doctest::Contains("level 'x'"), std::invalid_argument);

        cfg.validate = false;
        CHECK_NOTHROW(prepare_cloud(cloud, cfg));
    }

    SUBCASE("an explicit region overrides the bounding box") {
        RunConfig cfg;
        cfg.params.k_x = 10.0;
        // Tiny region: even a weak k_x dominates.
        cfg.roi = Roi{-0.001, 0.001, -0.001, 0.001, -0.001, 0.001};
        CHECK_NOTHROW(prepare_cloud(cloud, cfg));
    }

    SUBCASE("degenerate configs are rejected") {
        RunConfig cfg;
        cfg.k = 0;
        CHECK_THROWS_AS(prepare_cloud(cloud, cfg), std::invalid_argument);
        cfg.k = 8;
        cfg.sample = 0;
        CHECK_THROWS_AS(prepare_cloud(cloud, cfg), std::invalid_argument);
    }
}

TEST_CASE("benchmark report structure") {
    const PointCloud cloud = test_cloud(3000, 12);
    RunConfig cfg;
    cfg.source = "unit";
    cfg.k = 6;
    cfg.sample = 3000;
    cfg.seed = 5;
    cfg.threads = 1;
    cfg.runs = 2;  // below the floor; must be clamped up to 5

    const BenchmarkReport report = run_benchmark(cloud, cfg);

    CHECK(report.source == "unit");
    CHECK(report.points == 3000);
    CHECK(report.k == 6);
    CHECK(report.runs == 5);
    CHECK(report.threads == 1);
    CHECK(report.seed == 5);

    const std::vector<std::string> expected{"scoring", "sorting", "neighbor_gather", "nee",
                                            "knn_bruteforce"};
    REQUIRE(report.stages.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const StageTiming& s = report.stages[i];
        CHECK(s.stage == expected[i]);
        REQUIRE(s.samples.size() == 5);

        std::vector<double> sorted = s.samples;
        std::sort(sorted.begin(), sorted.end());
        CHECK(s.seconds == sorted[2]);
        CHECK(sorted.front() >= 0.0);
        if (s.seconds > 0.0) {
            CHECK(s.points_per_second ==
                  static_cast<double>(report.points) / s.seconds);
        }
    }
    CHECK(report.stage("nee") != nullptr);
    CHECK(report.stage("nope") == nullptr);

    SUBCASE("non-timing fields are reproducible") {
        const BenchmarkReport again = run_benchmark(cloud, cfg);
        CHECK(again.points == report.points);
        CHECK(again.angles == report.angles);
        REQUIRE(again.stages.size() == report.stages.size());
        for (std::size_t i = 0; i < report.stages.size(); ++i) {
            CHECK(again.stages[i].stage == report.stages[i].stage);
        }
    }

    SUBCASE("json matches the published schema") {
        const nlohmann::json j = nlohmann::json::parse(to_json(report));
        const nlohmann::json schema = refs::load_schema("benchmark_report.schema.json");
        CHECK(refs::schema_check(schema, j) == "");
        CHECK(j["stages"].size() == 5);
        CHECK(j["stages"][0]["stage"] == "scoring");
    }
}

TEST_CASE("locality reports") {
    const PointCloud scene = synth_scene(refs::grid_scene(3, 2, 5.0, 150, 400, 10.0), 17);
    REQUIRE(scene.has_labels());

    RunConfig cfg;
    cfg.source = "scene";
    cfg.k = 8;
    cfg.sample = scene.size();
    cfg.threads = 1;

    SUBCASE("one report per variant and view set") {
        cfg.variants = {ScoreVariant::Full, ScoreVariant::Ablation};
        cfg.view_counts = {1, 2};
        const std::vector<LocalityReport> reports = run_locality(scene, cfg);
        REQUIRE(reports.size() == 4);

        CHECK(reports[0].angles == evenly_spaced_views(1));
        CHECK(reports[1].angles == evenly_spaced_views(2));
        CHECK(reports[0].params.variant == ScoreVariant::Full);
        CHECK(reports[2].params.variant == ScoreVariant::Ablation);
        CHECK(reports[2].params.k_z == 1e10);

        for (const LocalityReport& r : reports) {
            CHECK(r.points == scene.size());
            CHECK(r.views.size() == r.angles.size());
            REQUIRE(r.pooled.purity.has_value());
            CHECK(r.oracle_mean_distance > 0.0);
            for (const ViewLocality& v : r.views) {
                CHECK(r.pooled.recall >= v.recall);
                CHECK(v.recall >= 0.0);
                CHECK(v.recall <= 1.0);
                REQUIRE(v.purity.has_value());
            }
        }
    }

    SUBCASE("explicit angles are echoed") {
        cfg.angles = {0.0, 1.0};
        const std::vector<LocalityReport> reports = run_locality(scene, cfg);
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].angles == std::vector<double>{0.0, 1.0});
        CHECK(reports[0].views.size() == 2);
        CHECK(reports[0].views[1].angle == 1.0);
    }

    SUBCASE("a single-class cloud is perfectly pure") {
        SceneSpec spec;
        spec.ground_points = 0;
        spec.pillars = {{0.0, 0.0, 1.5, 3.0, 7}};
        spec.points_per_object = 400;
        const PointCloud pillar = synth_scene(spec, 21);
        REQUIRE(pillar.size() == 400);

        cfg.sample = pillar.size();
        cfg.variants = {ScoreVariant::Full, ScoreVariant::Ablation};
        for (const LocalityReport& r : run_locality(pillar, cfg)) {
            CHECK(*r.pooled.purity == 1.0);
            for (const ViewLocality& v : r.views) CHECK(*v.purity == 1.0);
        }
    }

    SUBCASE("labels are mandatory") {
        PointCloud plain = test_cloud(200, 13);
        CHECK_THROWS_WITH_AS(run_locality(plain, cfg), doctest::Contains("labels"),
                             std::invalid_argument);
    }

    SUBCASE("json array matches the published schema") {
        cfg.view_counts = {1, 4};
        nlohmann::json arr = nlohmann::json::array();
        for (const LocalityReport& r : run_locality(scene, cfg)) {
            arr.push_back(nlohmann::json::parse(to_json(r)));
        }
        const nlohmann::json schema = refs::load_schema("locality_report.schema.json");
        CHECK(refs::schema_check(schema, arr) == "");
        CHECK(arr[1]["views"].size() == 4);
    }
}
