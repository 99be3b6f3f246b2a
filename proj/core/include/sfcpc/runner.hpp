#ifndef SFCPC_RUNNER_HPP
#define SFCPC_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfcpc/cloud.hpp"
#include "sfcpc/oracle.hpp"
#include "sfcpc/params.hpp"
#include "sfcpc/sort.hpp"

namespace sfcpc {

/// Shared configuration for the locality and benchmark pipelines. The
/// caller loads or synthesizes the cloud; the runners only see in-memory
/// data so timings never include file IO.
struct RunConfig {
    std::string source = "synthetic";

    SortParams params;
    /// Locality: one report per variant. Empty means just params.variant.
    std::vector<ScoreVariant> variants;
    /// View angles in radians. Empty means the default four.
    std::vector<double> angles;
    /// Locality: when set, one report per count using evenly_spaced_views,
    /// overriding the explicit angle list.
    std::vector<std::size_t> view_counts;

    SortMode mode = SortMode::FloatScore;
    std::size_t k = 8;
    std::size_t sample = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 0;   // 0 picks the machine core count
    std::size_t runs = 5;   // benchmark repetitions per stage
    bool validate = true;   // dominance-check params against the cloud ROI
    std::optional<Roi> roi; // override for the validation region
};

/// Draws the sample (when the cloud is larger than cfg.sample) and checks
/// params against the ROI when cfg.validate. Shared entry step of both
/// runners, exposed so the sort/neighbors subcommands start from the same
/// cloud for a given seed.
PointCloud prepare_cloud(const PointCloud& cloud, const RunConfig& cfg);

struct StageTiming {
    std::string stage;
    double seconds = 0.0;  // median over runs
    double points_per_second = 0.0;
    std::vector<double> samples;
};

struct BenchmarkReport {
    std::string source;
    std::size_t points = 0;
    std::size_t k = 0;
    std::size_t runs = 0;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    SortParams params;
    SortMode mode = SortMode::FloatScore;
    std::vector<double> angles;
    std::vector<StageTiming> stages;

    const StageTiming* stage(const std::string& name) const;
};

/// Times scoring, sorting, neighbor gathering, feature encoding and
/// brute-force KNN separately, each repeated cfg.runs times (minimum 5)
/// with the median reported.
BenchmarkReport run_benchmark(const PointCloud& cloud, const RunConfig& cfg);

/// One report per requested variant and view set over the same prepared
/// cloud. Purity metrics require labels; throws std::invalid_argument
/// without them.
std::vector<LocalityReport> run_locality(const PointCloud& cloud, const RunConfig& cfg);

std::string to_json(const BenchmarkReport& report);

}  // namespace sfcpc

#endif
