#include "sfcpc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include <json.hpp>

#include "sfcpc/parallel.hpp"
#include "sfcpc/rng.hpp"
#include "sfcpc/sample.hpp"
#include "sfcpc/validate.hpp"
#include "sfcpc/views.hpp"

namespace sfcpc {

namespace {

std::vector<double> effective_angles(const RunConfig& cfg) {
    if (!cfg.angles.empty()) return cfg.angles;
    return {kDefaultViewAngles.begin(), kDefaultViewAngles.end()};
}

unsigned effective_threads(const RunConfig& cfg) {
    return cfg.threads == 0 ? default_threads() : cfg.threads;
}

void check_config(const RunConfig& cfg) {
    if (cfg.k == 0) throw std::invalid_argument("k must be at least 1");
    if (cfg.sample == 0) throw std::invalid_argument("sample target must be at least 1");
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Params for a requested variant: the configured set when the variant
/// matches, otherwise that variant's defaults.
SortParams params_for(const RunConfig& cfg, ScoreVariant v) {
    if (v == cfg.params.variant) return cfg.params;
    if (v == ScoreVariant::Ablation) return SortParams::ablation_defaults();
    SortParams p = SortParams::full_defaults();
    p.variant = v;
    return p;
}

}  // namespace

PointCloud prepare_cloud(const PointCloud& cloud, const RunConfig& cfg) {
    check_config(cfg);
    Rng rng(cfg.seed);
    PointCloud prepared = sample_points(cloud, cfg.sample, rng);
    if (cfg.validate) {
        const Roi roi = cfg.roi ? *cfg.roi : bounding_roi(prepared);
        const ParamsValidation v = validate_params(cfg.params, roi);
        if (!v.ok) throw std::invalid_argument(v.message());
    }
    return prepared;
}

const StageTiming* BenchmarkReport::stage(const std::string& name) const {
    for (const StageTiming& s : stages) {
        if (s.stage == name) return &s;
    }
    return nullptr;
}

BenchmarkReport run_benchmark(const PointCloud& cloud, const RunConfig& cfg) {
    const PointCloud prepared = prepare_cloud(cloud, cfg);
    const unsigned threads = effective_threads(cfg);
    const std::size_t runs = std::max<std::size_t>(cfg.runs, 5);
    const std::size_t n = prepared.size();

    BenchmarkReport report;
    report.source = cfg.source;
    report.points = n;
    report.k = cfg.k;
    report.runs = runs;
    report.threads = threads;
    report.seed = cfg.seed;
    report.params = cfg.params;
    report.mode = cfg.mode;
    report.angles = effective_angles(cfg);

    using clock = std::chrono::steady_clock;
    auto time_stage = [&](const std::string& name, auto&& body) {
        StageTiming timing;
        timing.stage = name;
        timing.samples.reserve(runs);
        for (std::size_t r = 0; r < runs; ++r) {
            const auto start = clock::now();
            body();
            const auto stop = clock::now();
            timing.samples.push_back(std::chrono::duration<double>(stop - start).count());
        }
        timing.seconds = median(timing.samples);
        timing.points_per_second =
            timing.seconds > 0.0 ? static_cast<double>(n) / timing.seconds : 0.0;
        report.stages.push_back(std::move(timing));
    };

    std::vector<double> scores;
    time_stage("scoring", [&] { scores = compute_scores(prepared, cfg.params, threads); });

    Permutation perm;
    time_stage("sorting", [&] { perm = sort_cloud(prepared, cfg.params, cfg.mode, threads); });

    NeighborTable table;
    time_stage("neighbor_gather", [&] { table = sequence_neighbors(perm, cfg.k); });

    FeatureBlock block;
    time_stage("nee", [&] { block = encode_nee(prepared, table); });

    NeighborTable truth;
    time_stage("knn_bruteforce", [&] { truth = knn_bruteforce(prepared, cfg.k, threads); });

    return report;
}

std::vector<LocalityReport> run_locality(const PointCloud& cloud, const RunConfig& cfg) {
    if (!cloud.has_labels()) {
        throw std::invalid_argument("locality metrics need labels (kitti pair or synthetic scene)");
    }
    const PointCloud prepared = prepare_cloud(cloud, cfg);
    const unsigned threads = effective_threads(cfg);
    const Roi roi = cfg.roi ? *cfg.roi : bounding_roi(prepared);

    std::vector<ScoreVariant> variants = cfg.variants;
    if (variants.empty()) variants = {cfg.params.variant};

    std::vector<std::vector<double>> angle_sets;
    if (cfg.view_counts.empty()) {
        angle_sets.push_back(effective_angles(cfg));
    } else {
        for (const std::size_t count : cfg.view_counts) {
            angle_sets.push_back(evenly_spaced_views(count));
        }
    }

    const NeighborTable truth = knn_grid(prepared, cfg.k, threads);
    const double oracle_mean = mean_neighbor_distance(prepared, truth);

    std::vector<LocalityReport> reports;
    for (const ScoreVariant variant : variants) {
        const SortParams params = params_for(cfg, variant);
        if (cfg.validate) {
            const ParamsValidation v = validate_params(params, roi);
            if (!v.ok) throw std::invalid_argument(v.message());
        }
        for (const std::vector<double>& angles : angle_sets) {
            const ViewSet views = build_views(prepared, angles, params, cfg.mode, threads);

            LocalityReport report;
            report.source = cfg.source;
            report.points = prepared.size();
            report.k = cfg.k;
            report.params = params;
            report.mode = cfg.mode;
            report.angles = angles;
            report.oracle_mean_distance = oracle_mean;

            std::vector<NeighborTable> tables;
            tables.reserve(views.size());
            for (const View& view : views.views) {
                tables.push_back(sequence_neighbors(view.perm, cfg.k));
                ViewLocality vl;
                vl.angle = view.angle;
                vl.recall = recall_at_k(tables.back(), truth);
                vl.purity = label_purity(prepared, tables.back());
                vl.mean_distance = mean_neighbor_distance(prepared, tables.back());
                report.views.push_back(vl);
            }
            const NeighborTable pooled = pool_top_k(prepared, tables, cfg.k);
            report.pooled.angle = 0.0;
            report.pooled.recall = recall_at_k(pooled, truth);
            report.pooled.purity = label_purity(prepared, pooled);
            report.pooled.mean_distance = mean_neighbor_distance(prepared, pooled);
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

std::string to_json(const BenchmarkReport& report) {
    nlohmann::json j;
    j["source"] = report.source;
    j["points"] = report.points;
    j["k"] = report.k;
    j["runs"] = report.runs;
    j["threads"] = report.threads;
    j["seed"] = report.seed;
    j["mode"] = to_string(report.mode);
    j["params"] = nlohmann::json::parse(to_json(report.params));
    j["angles"] = report.angles;
    j["stages"] = nlohmann::json::array();
    for (const StageTiming& s : report.stages) {
        nlohmann::json sj;
        sj["stage"] = s.stage;
        sj["seconds"] = s.seconds;
        sj["points_per_second"] = s.points_per_second;
        sj["samples"] = s.samples;
        j["stages"].push_back(sj);
    }
    return j.dump(2);
}

}  // namespace sfcpc
