#include "sfcpc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

#include "sfcpc/parallel.hpp"

namespace sfcpc {

namespace {

struct Candidate {
    double d2;
    std::uint64_t idx;

    bool operator<(const Candidate& other) const {
        if (d2 != other.d2) return d2 < other.d2;
        return idx < other.idx;
    }
};

// Fixed-capacity nearest set: a max-heap on (distance, index) so the worst
// kept candidate is always on top.
class TopK {
public:
    explicit TopK(std::size_t k) : k_(k) { heap_.reserve(k); }

    void offer(double d2, std::uint64_t idx) {
        const Candidate c{d2, idx};
        if (heap_.size() < k_) {
            heap_.push_back(c);
            std::push_heap(heap_.begin(), heap_.end());
        } else if (c < heap_.front()) {
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.back() = c;
            std::push_heap(heap_.begin(), heap_.end());
        }
    }

    bool full() const { return heap_.size() == k_; }
    double worst_d2() const { return heap_.front().d2; }

    /// Nearest first; ties by lower index.
    void drain_sorted(std::uint64_t* out) {
        std::sort(heap_.begin(), heap_.end());
        for (std::size_t j = 0; j < heap_.size(); ++j) out[j] = heap_[j].idx;
    }

private:
    std::size_t k_;
    std::vector<Candidate> heap_;
};

void require_searchable(const PointCloud& cloud, std::size_t k) {
    if (k == 0) throw std::invalid_argument("neighbor count must be positive");
    if (cloud.size() <= k) {
        throw std::invalid_argument("need more than " + std::to_string(k) + " points, have " +
                                    std::to_string(cloud.size()));
    }
}

double dist2(const PointCloud& c, std::size_t i, std::size_t j) {
    const double dx = c.x[i] - c.x[j];
    const double dy = c.y[i] - c.y[j];
    const double dz = c.z[i] - c.z[j];
    return dx * dx + dy * dy + dz * dz;
}

}  // namespace

NeighborTable knn_bruteforce(const PointCloud& cloud, std::size_t k, unsigned threads) {
    require_searchable(cloud, k);
    const std::size_t n = cloud.size();
    NeighborTable table;
    table.k = k;
    table.at.resize(n * k);
    const double* xs = cloud.x.data();
    const double* ys = cloud.y.data();
    const double* zs = cloud.z.data();
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double xi = xs[i], yi = ys[i], zi = zs[i];
            TopK top(k);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double dx = xs[j] - xi;
                const double dy = ys[j] - yi;
                const double dz = zs[j] - zi;
                top.offer(dx * dx + dy * dy + dz * dz, j);
            }
            top.drain_sorted(table.at.data() + i * k);
        }
    });
    return table;
}

namespace {

struct Grid {
    double x0, y0, z0;
    double h;
    std::size_t nx, ny, nz;
    std::vector<std::uint32_t> offsets;  // CSR over cells
    std::vector<std::uint32_t> points;

    std::size_t cx(double x) const {
        return clamp_axis((x - x0) / h, nx);
    }
    std::size_t cy(double y) const { return clamp_axis((y - y0) / h, ny); }
    std::size_t cz(double z) const { return clamp_axis((z - z0) / h, nz); }
    std::size_t cell(std::size_t ix, std::size_t iy, std::size_t iz) const {
        return (iz * ny + iy) * nx + ix;
    }

    static std::size_t clamp_axis(double v, std::size_t dim) {
        const auto i = static_cast<std::int64_t>(std::floor(v));
        if (i < 0) return 0;
        if (i >= static_cast<std::int64_t>(dim)) return dim - 1;
        return static_cast<std::size_t>(i);
    }
};

Grid build_grid(const PointCloud& cloud) {
    const Roi box = bounding_roi(cloud);
    const std::size_t n = cloud.size();
    const double ex = box.x_max - box.x_min;
    const double ey = box.y_max - box.y_min;
    const double ez = box.z_max - box.z_min;
    // Aim for a couple of points per cell, then back off until the cell
    // count stays proportional to n.
    double h = std::cbrt(std::max(ex * ey * ez, 1e-18) * 2.0 / static_cast<double>(n));
    Grid g;
    for (;;) {
        g.nx = static_cast<std::size_t>(ex / h) + 1;
        g.ny = static_cast<std::size_t>(ey / h) + 1;
        g.nz = static_cast<std::size_t>(ez / h) + 1;
        if (g.nx * g.ny * g.nz <= 4 * n + 64) break;
        h *= 1.2599;
    }
    g.h = h;
    g.x0 = box.x_min;
    g.y0 = box.y_min;
    g.z0 = box.z_min;

    const std::size_t cells = g.nx * g.ny * g.nz;
    std::vector<std::uint32_t> counts(cells, 0);
    std::vector<std::size_t> home(n);
    for (std::size_t i = 0; i < n; ++i) {
        home[i] = g.cell(g.cx(cloud.x[i]), g.cy(cloud.y[i]), g.cz(cloud.z[i]));
        ++counts[home[i]];
    }
    g.offsets.resize(cells + 1, 0);
    for (std::size_t c = 0; c < cells; ++c) g.offsets[c + 1] = g.offsets[c] + counts[c];
    g.points.resize(n);
    std::vector<std::uint32_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) g.points[cursor[home[i]]++] = static_cast<std::uint32_t>(i);
    return g;
}

}  // namespace

NeighborTable knn_grid(const PointCloud& cloud, std::size_t k, unsigned threads) {
    require_searchable(cloud, k);
    const std::size_t n = cloud.size();
    const Grid grid = build_grid(cloud);
    NeighborTable table;
    table.k = k;
    table.at.resize(n * k);

    const std::size_t max_ring = std::max({grid.nx, grid.ny, grid.nz});
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t hx = grid.cx(cloud.x[i]);
            const std::size_t hy = grid.cy(cloud.y[i]);
            const std::size_t hz = grid.cz(cloud.z[i]);
            TopK top(k);

            auto scan_cell = [&](std::size_t ix, std::size_t iy, std::size_t iz) {
                const std::size_t c = grid.cell(ix, iy, iz);
                for (std::uint32_t s = grid.offsets[c]; s < grid.offsets[c + 1]; ++s) {
                    const std::uint32_t j = grid.points[s];
                    if (j == i) continue;
                    top.offer(dist2(cloud, i, j), j);
                }
            };

            for (std::size_t r = 0; r <= max_ring; ++r) {
                // Any point in ring r or beyond is at least (r-1) cell
                // widths away. Strictly below that bound nothing unscanned
                // can even tie, so the search is provably complete.
                if (r >= 2 && top.full()) {
                    const double reach = static_cast<double>(r - 1) * grid.h;
                    if (top.worst_d2() < reach * reach) break;
                }
                const std::int64_t sr = static_cast<std::int64_t>(r);
                const auto lo = [sr](std::size_t c) { return static_cast<std::int64_t>(c) - sr; };
                const auto hi = [sr](std::size_t c) { return static_cast<std::int64_t>(c) + sr; };
                for (std::int64_t iz = lo(hz); iz <= hi(hz); ++iz) {
                    if (iz < 0 || iz >= static_cast<std::int64_t>(grid.nz)) continue;
                    for (std::int64_t iy = lo(hy); iy <= hi(hy); ++iy) {
                        if (iy < 0 || iy >= static_cast<std::int64_t>(grid.ny)) continue;
                        const bool face_z = std::abs(iz - static_cast<std::int64_t>(hz)) == sr;
                        const bool face_y = std::abs(iy - static_cast<std::int64_t>(hy)) == sr;
                        for (std::int64_t ix = lo(hx); ix <= hi(hx); ++ix) {
                            if (ix < 0 || ix >= static_cast<std::int64_t>(grid.nx)) continue;
                            const bool face_x =
                                std::abs(ix - static_cast<std::int64_t>(hx)) == sr;
                            // Only the shell of the cube is new at ring r.
                            if (!face_x && !face_y && !face_z) continue;
                            scan_cell(static_cast<std::size_t>(ix), static_cast<std::size_t>(iy),
                                      static_cast<std::size_t>(iz));
                        }
                    }
                }
            }
            top.drain_sorted(table.at.data() + i * k);
        }
    });
    return table;
}

namespace {

void require_same_shape(const NeighborTable& a, const NeighborTable& b) {
    if (a.k != b.k || a.size() != b.size()) {
        throw std::invalid_argument("neighbor tables differ in shape");
    }
}

std::vector<std::uint64_t> row_set(const NeighborTable& t, std::size_t i) {
    std::vector<std::uint64_t> row(t.at.begin() + static_cast<std::ptrdiff_t>(i * t.k),
                                   t.at.begin() + static_cast<std::ptrdiff_t>((i + 1) * t.k));
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    return row;
}

}  // namespace

double recall_at_k(const NeighborTable& candidate, const NeighborTable& reference) {
    require_same_shape(candidate, reference);
    const std::size_t n = candidate.size();
    if (n == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto cand = row_set(candidate, i);
        const auto ref = row_set(reference, i);
        std::size_t common = 0;
        for (const std::uint64_t c : cand) {
            common += std::binary_search(ref.begin(), ref.end(), c) ? 1 : 0;
        }
        sum += static_cast<double>(common) / static_cast<double>(candidate.k);
    }
    return sum / static_cast<double>(n);
}

double label_purity(const PointCloud& cloud, const NeighborTable& table) {
    if (!cloud.has_labels()) throw std::invalid_argument("label purity needs labels");
    if (table.size() != cloud.size()) {
        throw std::invalid_argument("neighbor table does not cover the cloud");
    }
    const std::size_t n = table.size();
    if (n == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t same = 0;
        for (std::size_t j = 0; j < table.k; ++j) {
            same += cloud.labels[table.entry(i, j)] == cloud.labels[i] ? 1 : 0;
        }
        sum += static_cast<double>(same) / static_cast<double>(table.k);
    }
    return sum / static_cast<double>(n);
}

double mean_neighbor_distance(const PointCloud& cloud, const NeighborTable& table) {
    if (table.size() != cloud.size()) {
        throw std::invalid_argument("neighbor table does not cover the cloud");
    }
    const std::size_t n = table.size();
    if (n == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < table.k; ++j) {
            sum += std::sqrt(dist2(cloud, i, table.entry(i, j)));
        }
    }
    return sum / static_cast<double>(n * table.k);
}

std::vector<double> per_point_mean_distance(const PointCloud& cloud, const NeighborTable& table) {
    if (table.size() != cloud.size()) {
        throw std::invalid_argument("neighbor table does not cover the cloud");
    }
    std::vector<double> out(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < table.k; ++j) {
            sum += std::sqrt(dist2(cloud, i, table.entry(i, j)));
        }
        out[i] = sum / static_cast<double>(table.k);
    }
    return out;
}

NeighborTable pool_top_k(const PointCloud& cloud, const std::vector<NeighborTable>& tables,
                         std::size_t k) {
    if (tables.empty()) throw std::invalid_argument("need at least one table to pool");
    const std::size_t n = cloud.size();
    for (const NeighborTable& t : tables) {
        if (t.size() != n) throw std::invalid_argument("pooled tables must cover the cloud");
    }
    NeighborTable out;
    out.k = k;
    out.at.resize(n * k);
    std::vector<std::uint64_t> pool;
    std::vector<Candidate> ranked;
    for (std::size_t i = 0; i < n; ++i) {
        pool.clear();
        for (const NeighborTable& t : tables) {
            for (std::size_t j = 0; j < t.k; ++j) pool.push_back(t.entry(i, j));
        }
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        ranked.clear();
        for (const std::uint64_t c : pool) {
            if (c == i) continue;
            ranked.push_back({dist2(cloud, i, c), c});
        }
        std::sort(ranked.begin(), ranked.end());
        std::uint64_t* row = out.at.data() + i * k;
        std::size_t filled = 0;
        for (; filled < k && filled < ranked.size(); ++filled) row[filled] = ranked[filled].idx;
        while (filled < k) row[filled++] = i;
    }
    return out;
}

std::string to_json(const LocalityReport& report) {
    nlohmann::json j;
    j["source"] = report.source;
    j["points"] = report.points;
    j["k"] = report.k;
    j["mode"] = to_string(report.mode);
    j["params"] = nlohmann::json::parse(to_json(report.params));
    j["angles"] = report.angles;
    j["recall_at_k"] = report.pooled.recall;
    if (report.pooled.purity) j["label_purity"] = *report.pooled.purity;
    j["mean_neighbor_distance"] = report.pooled.mean_distance;
    j["oracle_mean_distance"] = report.oracle_mean_distance;
    j["views"] = nlohmann::json::array();
    for (const ViewLocality& v : report.views) {
        nlohmann::json vj;
        vj["angle"] = v.angle;
        vj["recall_at_k"] = v.recall;
        if (v.purity) vj["label_purity"] = *v.purity;
        vj["mean_neighbor_distance"] = v.mean_distance;
        j["views"].push_back(vj);
    }
    return j.dump(2);
}

}  // namespace sfcpc
