#include "sfcpc/neighbors.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sfcpc {

NeighborTable sequence_neighbors(const Permutation& perm, std::size_t k) {
    if (k == 0) throw std::invalid_argument("neighbor count must be positive");
    const std::size_t n = perm.size();
    NeighborTable table;
    table.k = k;
    table.at.resize(n * k);
    for (std::size_t p = 0; p < n; ++p) {
        const std::uint64_t self = perm.order[p];
        std::uint64_t* row = table.at.data() + self * k;
        std::size_t filled = 0;
        // Walk outward: p-1, p+1, p-2, p+2, ... The earlier position wins
        // the equal-distance tie, and a wall on one side just drains the
        // other (the inward-shifted window).
        std::size_t lo = p;
        std::size_t hi = p;
        while (filled < k) {
            const bool lo_ok = lo > 0;
            const bool hi_ok = hi + 1 < n;
            if (!lo_ok && !hi_ok) break;
            if (lo_ok && (!hi_ok || p - (lo - 1) <= (hi + 1) - p)) {
                row[filled++] = perm.order[--lo];
            } else {
                row[filled++] = perm.order[++hi];
            }
        }
        while (filled < k) row[filled++] = self;
    }
    return table;
}

std::vector<std::string> feature_columns(const PointCloud& cloud, std::size_t k) {
    std::vector<std::string> columns = {"x", "y", "z"};
    for (std::size_t j = 1; j <= k; ++j) {
        const std::string suffix = std::to_string(j);
        columns.push_back("dx" + suffix);
        columns.push_back("dy" + suffix);
        columns.push_back("dz" + suffix);
    }
    if (cloud.has_intensity()) columns.push_back("intensity");
    return columns;
}

FeatureBlock encode_nee(const PointCloud& cloud, const NeighborTable& table) {
    const std::size_t n = cloud.size();
    if (table.size() != n) {
        throw std::invalid_argument("neighbor table covers " + std::to_string(table.size()) +
                                    " points, cloud has " + std::to_string(n));
    }
    const std::size_t k = table.k;
    FeatureBlock block;
    block.columns = feature_columns(cloud, k);
    block.dim = block.columns.size();
    block.values.resize(n * block.dim);
    for (std::size_t i = 0; i < n; ++i) {
        float* row = block.row(i);
        *row++ = static_cast<float>(cloud.x[i]);
        *row++ = static_cast<float>(cloud.y[i]);
        *row++ = static_cast<float>(cloud.z[i]);
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t nb = table.entry(i, j);
            *row++ = static_cast<float>(cloud.x[i] - cloud.x[nb]);
            *row++ = static_cast<float>(cloud.y[i] - cloud.y[nb]);
            *row++ = static_cast<float>(cloud.z[i] - cloud.z[nb]);
        }
        if (cloud.has_intensity()) *row++ = static_cast<float>(cloud.intensity[i]);
    }
    return block;
}

FeatureBlock to_sequence_order(const FeatureBlock& block, const Permutation& perm) {
    if (block.rows() != perm.size()) {
        throw std::invalid_argument("feature block and permutation sizes differ");
    }
    FeatureBlock out;
    out.dim = block.dim;
    out.columns = block.columns;
    out.values.resize(block.values.size());
    for (std::size_t p = 0; p < perm.size(); ++p) {
        const float* src = block.row(perm.order[p]);
        std::copy(src, src + block.dim, out.row(p));
    }
    return out;
}

FeatureBlock fuse_views(const ViewSet& views, const std::vector<FeatureBlock>& blocks) {
    if (views.size() != blocks.size() || blocks.empty()) {
        throw std::invalid_argument("need exactly one feature block per view");
    }
    const std::size_t n = blocks[0].rows();
    const std::size_t dim = blocks[0].dim;
    for (std::size_t v = 0; v < blocks.size(); ++v) {
        if (blocks[v].rows() != n || blocks[v].dim != dim) {
            throw std::invalid_argument("feature block shapes differ across views");
        }
        if (views[v].perm.size() != n) {
            throw std::invalid_argument("view permutation does not cover the blocks");
        }
    }
    FeatureBlock out;
    out.dim = dim;
    out.columns = blocks[0].columns;
    out.values.resize(n * dim);
    std::vector<double> acc(dim);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t v = 0; v < blocks.size(); ++v) {
            const float* row = blocks[v].row(views[v].perm.inverse[i]);
            for (std::size_t c = 0; c < dim; ++c) acc[c] += static_cast<double>(row[c]);
        }
        float* dst = out.row(i);
        for (std::size_t c = 0; c < dim; ++c) dst[c] = static_cast<float>(acc[c]);
    }
    return out;
}

void save_feature_csv(const FeatureBlock& block, const std::filesystem::path& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    for (std::size_t c = 0; c < block.columns.size(); ++c) {
        if (c > 0) file << ',';
        file << block.columns[c];
    }
    file << '\n';
    char buf[32];
    for (std::size_t i = 0; i < block.rows(); ++i) {
        const float* row = block.row(i);
        for (std::size_t c = 0; c < block.dim; ++c) {
            // %.9g prints enough digits for a float to round-trip.
            std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(row[c]));
            if (c > 0) file << ',';
            file << buf;
        }
        file << '\n';
    }
    if (!file) throw IoError("short write to " + path.string());
}

void save_feature_bin(const FeatureBlock& block, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    std::vector<unsigned char> bytes(block.values.size() * 4);
    for (std::size_t i = 0; i < block.values.size(); ++i) {
        std::uint32_t v = std::bit_cast<std::uint32_t>(block.values[i]);
        for (int b = 0; b < 4; ++b) {
            bytes[i * 4 + static_cast<std::size_t>(b)] = static_cast<unsigned char>(v & 0xffu);
            v >>= 8;
        }
    }
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) throw IoError("short write to " + path.string());

    nlohmann::json sidecar;
    sidecar["rows"] = block.rows();
    sidecar["dim"] = block.dim;
    sidecar["columns"] = block.columns;
    std::filesystem::path side = path;
    side += ".json";
    std::ofstream sfile(side);
    if (!sfile) throw IoError("cannot open " + side.string() + " for writing");
    sfile << sidecar.dump(2) << '\n';
    if (!sfile) throw IoError("short write to " + side.string());
}

}  // namespace sfcpc
