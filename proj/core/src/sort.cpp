#include "sfcpc/sort.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace sfcpc {

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.order.resize(n);
    p.inverse.resize(n);
    std::iota(p.order.begin(), p.order.end(), std::uint64_t{0});
    p.inverse = p.order;
    return p;
}

bool Permutation::is_valid() const {
    const std::size_t n = order.size();
    if (inverse.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t p = 0; p < n; ++p) {
        const std::uint64_t i = order[p];
        if (i >= n || seen[i]) return false;
        seen[i] = true;
        if (inverse[i] != p) return false;
    }
    return true;
}

const char* to_string(SortMode m) {
    return m == SortMode::ExactKey ? "exact" : "float";
}

namespace detail {

void compute_tails(const PointCloud& cloud, const SortParams& params, unsigned threads,
                   std::vector<double>& out) {
    const std::size_t n = cloud.size();
    out.resize(n);
    if (params.variant == ScoreVariant::Simple2d) {
        parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) out[i] = cloud.y[i];
        });
    } else {
        parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                out[i] = radial_distance(cloud.x[i], cloud.y[i]);
        });
    }
}

void check_finite(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(cloud.x[i]) || !std::isfinite(cloud.y[i]) ||
            !std::isfinite(cloud.z[i])) {
            throw std::invalid_argument("non-finite coordinate at point " + std::to_string(i));
        }
    }
}

namespace {

// Per-point exact key: cell indices in priority order, then the continuous
// tail. Unused levels stay zero (Simple2d uses only the first).
struct ExactKeyRow {
    std::array<std::int64_t, 3> cells{};
    double tail = 0.0;
};

std::vector<ExactKeyRow> build_keys(const PointCloud& cloud, const SortParams& params,
                                    unsigned threads) {
    const std::size_t n = cloud.size();
    std::vector<ExactKeyRow> keys(n);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double x = cloud.x[i], y = cloud.y[i], z = cloud.z[i];
            ExactKeyRow& k = keys[i];
            switch (params.variant) {
                case ScoreVariant::Full:
                    k.cells = {cell_index(x, params.r_x), cell_index(y, params.r_y),
                               cell_index(z, params.r_z)};
                    k.tail = radial_distance(x, y);
                    break;
                case ScoreVariant::Ablation:
                    k.cells = {cell_index(z, params.r_z), cell_index(x, params.r_x),
                               cell_index(y, params.r_y)};
                    k.tail = radial_distance(x, y);
                    break;
                case ScoreVariant::Swapped:
                    k.cells = {cell_index(y, params.r_y), cell_index(x, params.r_x),
                               cell_index(z, params.r_z)};
                    k.tail = radial_distance(x, y);
                    break;
                case ScoreVariant::Simple2d:
                    k.cells = {cell_index(x, params.r_x), 0, 0};
                    k.tail = y;
                    break;
            }
        }
    });
    return keys;
}

}  // namespace
}  // namespace detail

std::vector<double> compute_scores(const PointCloud& cloud, const SortParams& params,
                                   unsigned threads) {
    detail::check_finite(cloud);
    std::vector<double> scores;
    switch (params.variant) {
        case ScoreVariant::Full:
            detail::score_each(cloud, threads, scores,
                               [&params](double x, double y, double z) {
                                   return score_full(x, y, z, params);
                               });
            break;
        case ScoreVariant::Ablation:
            detail::score_each(cloud, threads, scores,
                               [&params](double x, double y, double z) {
                                   return score_ablation(x, y, z, params);
                               });
            break;
        case ScoreVariant::Swapped:
            detail::score_each(cloud, threads, scores,
                               [&params](double x, double y, double z) {
                                   return score_swapped(x, y, z, params);
                               });
            break;
        case ScoreVariant::Simple2d:
            detail::score_each(cloud, threads, scores, [&params](double x, double y, double) {
                return score_simple2d(x, y, params.k_x, params.r_x);
            });
            break;
    }
    return scores;
}

Permutation sort_cloud(const PointCloud& cloud, const SortParams& params, SortMode mode,
                       unsigned threads) {
    const std::size_t n = cloud.size();
    Permutation perm;
    perm.order.resize(n);
    std::iota(perm.order.begin(), perm.order.end(), std::uint64_t{0});

    if (mode == SortMode::FloatScore) {
        const std::vector<double> scores = compute_scores(cloud, params, threads);
        std::vector<double> tails;
        detail::compute_tails(cloud, params, threads, tails);
        std::sort(perm.order.begin(), perm.order.end(),
                  [&](std::uint64_t a, std::uint64_t b) {
                      if (scores[a] != scores[b]) return scores[a] < scores[b];
                      if (tails[a] != tails[b]) return tails[a] < tails[b];
                      return a < b;
                  });
    } else {
        detail::check_finite(cloud);
        const auto keys = detail::build_keys(cloud, params, threads);
        std::sort(perm.order.begin(), perm.order.end(),
                  [&](std::uint64_t a, std::uint64_t b) {
                      if (keys[a].cells != keys[b].cells) return keys[a].cells < keys[b].cells;
                      if (keys[a].tail != keys[b].tail) return keys[a].tail < keys[b].tail;
                      return a < b;
                  });
    }

    perm.inverse.resize(n);
    for (std::size_t p = 0; p < n; ++p) perm.inverse[perm.order[p]] = p;
    return perm;
}

Permutation invert(const Permutation& perm) {
    Permutation out;
    out.order = perm.inverse;
    out.inverse = perm.order;
    return out;
}

void save_permutation(const Permutation& perm, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    std::vector<unsigned char> bytes(perm.order.size() * 8);
    for (std::size_t p = 0; p < perm.order.size(); ++p) {
        std::uint64_t v = perm.order[p];
        for (int b = 0; b < 8; ++b) {
            bytes[p * 8 + b] = static_cast<unsigned char>(v & 0xffu);
            v >>= 8;
        }
    }
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) throw IoError("short write to " + path.string());
}

void save_permutation(const Permutation& perm, const std::filesystem::path& path,
                      const SortParams& params, SortMode mode) {
    save_permutation(perm, path);
    nlohmann::json sidecar;
    sidecar["points"] = perm.size();
    sidecar["mode"] = to_string(mode);
    sidecar["params"] = nlohmann::json::parse(to_json(params));
    std::filesystem::path side = path;
    side += ".json";
    std::ofstream file(side);
    if (!file) throw IoError("cannot open " + side.string() + " for writing");
    file << sidecar.dump(2) << '\n';
    if (!file) throw IoError("short write to " + side.string());
}

Permutation load_permutation(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary | std::ios::ate);
    if (!file) throw IoError("cannot open " + path.string());
    const std::streamsize size = file.tellg();
    if (size < 0 || size % 8 != 0) {
        throw IoError(path.string() + ": size " + std::to_string(size) +
                      " is not a multiple of 8");
    }
    file.seekg(0);
    std::vector<unsigned char> bytes(static_cast<std::size_t>(size));
    file.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!file) throw IoError("short read from " + path.string());

    const std::size_t n = bytes.size() / 8;
    Permutation perm;
    perm.order.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::uint64_t v = 0;
        for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[p * 8 + static_cast<std::size_t>(b)];
        perm.order[p] = v;
    }
    perm.inverse.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t p = 0; p < n; ++p) {
        const std::uint64_t i = perm.order[p];
        if (i >= n || seen[i]) {
            throw IoError(path.string() + ": not a permutation (entry " + std::to_string(p) +
                          ")");
        }
        seen[i] = true;
        perm.inverse[i] = p;
    }
    return perm;
}

}  // namespace sfcpc
