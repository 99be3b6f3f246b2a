#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfcpc/cloud.hpp"
#include "sfcpc/kitti_io.hpp"
#include "sfcpc/neighbors.hpp"
#include "sfcpc/oracle.hpp"
#include "sfcpc/params.hpp"
#include "sfcpc/rng.hpp"
#include "sfcpc/runner.hpp"
#include "sfcpc/sort.hpp"
#include "sfcpc/synth.hpp"
#include "sfcpc/validate.hpp"
#include "sfcpc/views.hpp"

namespace {

struct Options {
    std::string input;
    std::string labels;
    std::string synth_spec;
    std::string params_text;
    std::vector<double> angles;
    std::vector<std::string> variants;
    std::vector<std::size_t> views;
    std::vector<double> roi;
    std::size_t k = 8;
    std::size_t sample = 100000;
    std::uint64_t seed = 0;
    std::size_t runs = 5;
    std::string variant;
    std::string mode = "float";
    std::string out;
    std::string format = "json";
    unsigned threads = 0;
    bool skip_validate = false;
};

std::string read_text_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw sfcpc::IoError("cannot open " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

sfcpc::SortParams make_params(const Options& opt) {
    sfcpc::SortParams params;
    if (!opt.params_text.empty()) {
        // Inline JSON or a path to a JSON file.
        const std::string text = opt.params_text.front() == '{'
                                     ? opt.params_text
                                     : read_text_file(opt.params_text);
        params = sfcpc::params_from_json(text);
    }
    if (!opt.variant.empty()) {
        const sfcpc::ScoreVariant v = sfcpc::variant_from_string(opt.variant);
        if (opt.params_text.empty() && v == sfcpc::ScoreVariant::Ablation) {
            params = sfcpc::SortParams::ablation_defaults();
        } else {
            params.variant = v;
        }
    }
    return params;
}

sfcpc::PointCloud load_input(const Options& opt, std::string& source) {
    if (!opt.synth_spec.empty()) {
        source = opt.synth_spec;
        const sfcpc::SceneSpec spec = sfcpc::scene_from_json(read_text_file(opt.synth_spec));
        return sfcpc::synth_scene(spec, opt.seed);
    }
    sfcpc::PointCloud cloud;
    if (opt.input == "-") {
        source = "<stdin>";
        std::string data(std::istreambuf_iterator<char>(std::cin), {});
        cloud = sfcpc::parse_kitti_bin(
            std::as_bytes(std::span(data.data(), data.size())), source);
    } else {
        source = opt.input;
        cloud = sfcpc::load_kitti_bin(opt.input);
    }
    if (!opt.labels.empty()) cloud = sfcpc::load_labels(opt.labels, std::move(cloud));
    return cloud;
}

sfcpc::RunConfig make_config(const Options& opt, const std::string& source) {
    sfcpc::RunConfig cfg;
    cfg.source = source;
    cfg.params = make_params(opt);
    for (const std::string& v : opt.variants) {
        cfg.variants.push_back(sfcpc::variant_from_string(v));
    }
    cfg.angles = opt.angles;
    cfg.view_counts = opt.views;
    cfg.mode = opt.mode == "exact" ? sfcpc::SortMode::ExactKey : sfcpc::SortMode::FloatScore;
    cfg.k = opt.k;
    cfg.sample = opt.sample;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    cfg.runs = opt.runs;
    cfg.validate = !opt.skip_validate;
    if (!opt.roi.empty()) {
        if (opt.roi.size() != 6) {
            throw std::invalid_argument("--roi needs xmin,xmax,ymin,ymax,zmin,zmax");
        }
        cfg.roi = sfcpc::Roi{opt.roi[0], opt.roi[1], opt.roi[2],
                             opt.roi[3], opt.roi[4], opt.roi[5]};
    }
    return cfg;
}

void report_region(const sfcpc::RunConfig& cfg, const sfcpc::PointCloud& prepared) {
    if (!cfg.validate) {
        std::cerr << "region: validation skipped\n";
        return;
    }
    const sfcpc::Roi roi = cfg.roi ? *cfg.roi : sfcpc::bounding_roi(prepared);
    std::cerr << "region: " << (cfg.roi ? "explicit" : "cloud bounding box") << " x["
              << roi.x_min << ", " << roi.x_max << "] y[" << roi.y_min << ", " << roi.y_max
              << "] z[" << roi.z_min << ", " << roi.z_max << "]\n";
}

void write_text(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(out);
    if (!file) throw sfcpc::IoError("cannot open " + out + " for writing");
    file << text;
    if (text.empty() || text.back() != '\n') file << '\n';
    if (!file) throw sfcpc::IoError("short write to " + out);
}

std::string csv_join_angles(const std::vector<double>& angles) {
    std::ostringstream out;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (i > 0) out << ';';
        out << angles[i];
    }
    return out.str();
}

std::string locality_csv(const std::vector<sfcpc::LocalityReport>& reports) {
    std::ostringstream out;
    out << "source,points,k,mode,variant,angles,recall_at_k,label_purity,"
           "mean_neighbor_distance,oracle_mean_distance\n";
    for (const sfcpc::LocalityReport& r : reports) {
        out << r.source << ',' << r.points << ',' << r.k << ',' << to_string(r.mode) << ','
            << to_string(r.params.variant) << ',' << csv_join_angles(r.angles) << ','
            << r.pooled.recall << ',' << (r.pooled.purity ? *r.pooled.purity : 0.0) << ','
            << r.pooled.mean_distance << ',' << r.oracle_mean_distance << '\n';
    }
    return out.str();
}

std::string bench_csv(const sfcpc::BenchmarkReport& report) {
    std::ostringstream out;
    out << "stage,seconds,points_per_second\n";
    for (const sfcpc::StageTiming& s : report.stages) {
        out << s.stage << ',' << s.seconds << ',' << s.points_per_second << '\n';
    }
    return out.str();
}

int run_sort(const Options& opt) {
    std::string stage = "load";
    try {
        std::string source;
        const sfcpc::PointCloud cloud = load_input(opt, source);
        const sfcpc::RunConfig cfg = make_config(opt, source);

        stage = "validate";
        const sfcpc::PointCloud prepared = sfcpc::prepare_cloud(cloud, cfg);
        report_region(cfg, prepared);

        stage = "sort";
        const sfcpc::Permutation perm =
            sfcpc::sort_cloud(prepared, cfg.params, cfg.mode,
                              cfg.threads == 0 ? sfcpc::default_threads() : cfg.threads);

        stage = "write";
        sfcpc::save_permutation(perm, opt.out, cfg.params, cfg.mode);
        std::cerr << "sorted " << perm.size() << " points -> " << opt.out << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfcpc sort: " << stage << ": " << e.what() << "\n";
        return 1;
    }
}

int run_neighbors(const Options& opt) {
    std::string stage = "load";
    try {
        std::string source;
        const sfcpc::PointCloud cloud = load_input(opt, source);
        const sfcpc::RunConfig cfg = make_config(opt, source);

        stage = "validate";
        const sfcpc::PointCloud prepared = sfcpc::prepare_cloud(cloud, cfg);
        report_region(cfg, prepared);
        const unsigned threads =
            cfg.threads == 0 ? sfcpc::default_threads() : cfg.threads;

        stage = "views";
        std::vector<double> angles = cfg.angles;
        if (angles.empty()) {
            angles.assign(sfcpc::kDefaultViewAngles.begin(), sfcpc::kDefaultViewAngles.end());
        }
        const sfcpc::ViewSet views =
            sfcpc::build_views(prepared, angles, cfg.params, cfg.mode, threads);

        stage = "encode";
        std::vector<sfcpc::FeatureBlock> blocks;
        blocks.reserve(views.size());
        for (const sfcpc::View& view : views.views) {
            const sfcpc::NeighborTable table = sfcpc::sequence_neighbors(view.perm, cfg.k);
            blocks.push_back(
                sfcpc::to_sequence_order(sfcpc::encode_nee(view.cloud, table), view.perm));
        }

        stage = "fuse";
        const sfcpc::FeatureBlock fused = sfcpc::fuse_views(views, blocks);

        stage = "write";
        if (opt.format == "csv") {
            sfcpc::save_feature_csv(fused, opt.out);
        } else {
            sfcpc::save_feature_bin(fused, opt.out);
        }
        std::cerr << "encoded " << fused.rows() << " points x " << fused.dim
                  << " features -> " << opt.out << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfcpc neighbors: " << stage << ": " << e.what() << "\n";
        return 1;
    }
}

int run_locality(const Options& opt) {
    std::string stage = "load";
    try {
        std::string source;
        const sfcpc::PointCloud cloud = load_input(opt, source);
        const sfcpc::RunConfig cfg = make_config(opt, source);

        stage = "validate";
        const sfcpc::PointCloud prepared = sfcpc::prepare_cloud(cloud, cfg);
        report_region(cfg, prepared);

        stage = "locality";
        const std::vector<sfcpc::LocalityReport> reports = sfcpc::run_locality(prepared, cfg);

        stage = "write";
        if (opt.format == "csv") {
            write_text(opt.out, locality_csv(reports));
        } else {
            std::string json = "[\n";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                json += sfcpc::to_json(reports[i]);
                if (i + 1 < reports.size()) json += ',';
                json += '\n';
            }
            json += "]";
            write_text(opt.out, json);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfcpc locality: " << stage << ": " << e.what() << "\n";
        return 1;
    }
}

int run_bench(const Options& opt) {
    std::string stage = "load";
    try {
        std::string source;
        const sfcpc::PointCloud cloud = load_input(opt, source);
        const sfcpc::RunConfig cfg = make_config(opt, source);

        stage = "validate";
        const sfcpc::PointCloud prepared = sfcpc::prepare_cloud(cloud, cfg);
        report_region(cfg, prepared);

        stage = "benchmark";
        const sfcpc::BenchmarkReport report = sfcpc::run_benchmark(prepared, cfg);

        stage = "write";
        if (opt.format == "csv") {
            write_text(opt.out, bench_csv(report));
        } else {
            write_text(opt.out, sfcpc::to_json(report));
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfcpc bench: " << stage << ": " << e.what() << "\n";
        return 1;
    }
}

int run_synth(const Options& opt) {
    std::string stage = "load";
    try {
        const sfcpc::SceneSpec spec = sfcpc::scene_from_json(read_text_file(opt.synth_spec));

        stage = "synth";
        const sfcpc::PointCloud cloud = sfcpc::synth_scene(spec, opt.seed);

        stage = "write";
        const std::filesystem::path base(opt.out);
        std::filesystem::path bin = base;
        bin += ".bin";
        std::filesystem::path label = base;
        label += ".label";
        sfcpc::save_kitti_bin(cloud, bin);
        sfcpc::save_labels(cloud, label);
        std::cerr << "synthesized " << cloud.size() << " points -> " << bin.string() << ", "
                  << label.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfcpc synth: " << stage << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space-filling-curve ordering, sequence neighbors and locality metrics "
                 "for LiDAR point clouds"};
    app.require_subcommand(1);

    Options opt;

    auto add_input_flags = [&](CLI::App* sub, bool synth_only) {
        if (!synth_only) {
            sub->add_option("--input", opt.input, "KITTI scan (.bin), - for stdin");
            sub->add_option("--labels", opt.labels, "KITTI labels (.label)");
        }
        sub->add_option("--synth", opt.synth_spec, "synthetic scene spec (JSON file)");
        sub->add_option("--seed", opt.seed, "RNG seed for synthesis and sampling");
    };
    auto add_pipeline_flags = [&](CLI::App* sub) {
        sub->add_option("--params", opt.params_text, "sort params: inline JSON or a file path");
        sub->add_option("--variant", opt.variant, "scorer: full|ablation|simple2d|swapped");
        sub->add_option("--mode", opt.mode, "comparison mode: float|exact")
            ->check(CLI::IsMember({"float", "exact"}));
        sub->add_option("--angles", opt.angles, "view angles in radians (comma separated)")
            ->delimiter(',');
        sub->add_option("--k", opt.k, "neighbors per point")->check(CLI::PositiveNumber);
        sub->add_option("--sample", opt.sample, "sample target size")
            ->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker thread cap (0 = machine cores)");
        sub->add_option("--roi", opt.roi,
                        "validation region xmin,xmax,ymin,ymax,zmin,zmax "
                        "(default: cloud bounding box)")
            ->delimiter(',');
        sub->add_flag("--skip-validate", opt.skip_validate,
                      "skip the dominance check of params against the region");
    };

    CLI::App* sort_cmd = app.add_subcommand("sort", "sort a cloud and save the permutation");
    add_input_flags(sort_cmd, false);
    add_pipeline_flags(sort_cmd);
    sort_cmd->add_option("--out", opt.out, "permutation output path (sidecar at <out>.json)")
        ->required();

    CLI::App* nb_cmd =
        app.add_subcommand("neighbors", "encode fused multi-view sequence-neighbor features");
    add_input_flags(nb_cmd, false);
    add_pipeline_flags(nb_cmd);
    nb_cmd->add_option("--out", opt.out, "feature table output path")->required();
    nb_cmd->add_option("--format", opt.format,
                       "csv for a text table, json for float32 binary + JSON sidecar")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* loc_cmd =
        app.add_subcommand("locality", "measure how much 3D locality the ordering preserves");
    add_input_flags(loc_cmd, false);
    add_pipeline_flags(loc_cmd);
    loc_cmd->add_option("--variants", opt.variants, "scorers to compare (comma separated)")
        ->delimiter(',');
    loc_cmd->add_option("--views", opt.views,
                        "view counts to compare, evenly spaced over [0, pi)")
        ->delimiter(',');
    loc_cmd->add_option("--out", opt.out, "report path (default: stdout)");
    loc_cmd->add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* bench_cmd = app.add_subcommand("bench", "time the pipeline stages");
    add_input_flags(bench_cmd, false);
    add_pipeline_flags(bench_cmd);
    bench_cmd->add_option("--runs", opt.runs, "repetitions per stage (at least 5 are used)");
    bench_cmd->add_option("--out", opt.out, "report path (default: stdout)");
    bench_cmd->add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* synth_cmd =
        app.add_subcommand("synth", "generate a labeled scene as a .bin/.label pair");
    add_input_flags(synth_cmd, true);
    synth_cmd->get_option("--synth")->required();
    synth_cmd->add_option("--out", opt.out, "output base path (writes <out>.bin, <out>.label)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    const bool has_input = !opt.input.empty();
    const bool has_synth = !opt.synth_spec.empty();
    if (!synth_cmd->parsed() && has_input == has_synth) {
        std::cerr << "sfcpc: config: exactly one of --input or --synth is required\n";
        return 1;
    }

    if (sort_cmd->parsed()) return run_sort(opt);
    if (nb_cmd->parsed()) return run_neighbors(opt);
    if (loc_cmd->parsed()) return run_locality(opt);
    if (bench_cmd->parsed()) return run_bench(opt);
    if (synth_cmd->parsed()) return run_synth(opt);
    return 1;
}
