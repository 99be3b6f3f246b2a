#include <benchmark/benchmark.h>

#include "sfcpc/neighbors.hpp"
#include "sfcpc/oracle.hpp"
#include "sfcpc/rng.hpp"
#include "sfcpc/sort.hpp"
#include "sfcpc/views.hpp"

using namespace sfcpc;

namespace {

PointCloud uniform_cloud(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud cloud;
    cloud.x.reserve(n);
    cloud.y.reserve(n);
    cloud.z.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        cloud.x.push_back(rng.uniform(-50.0, 50.0));
        cloud.y.push_back(rng.uniform(-50.0, 50.0));
        cloud.z.push_back(rng.uniform(-4.0, 10.0));
    }
    return cloud;
}

void bm_scoring(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud cloud = uniform_cloud(n, 1);
    const SortParams params = SortParams::full_defaults();
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_scores(cloud, params));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void bm_sort(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud cloud = uniform_cloud(n, 2);
    const SortParams params = SortParams::full_defaults();
    const SortMode mode = state.range(1) == 0 ? SortMode::FloatScore : SortMode::ExactKey;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sort_cloud(cloud, params, mode));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void bm_sequence_neighbors(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud cloud = uniform_cloud(n, 3);
    const Permutation perm = sort_cloud(cloud, SortParams::full_defaults());
    for (auto _ : state) {
        benchmark::DoNotOptimize(sequence_neighbors(perm, 8));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void bm_encode(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud cloud = uniform_cloud(n, 4);
    const NeighborTable table =
        sequence_neighbors(sort_cloud(cloud, SortParams::full_defaults()), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_nee(cloud, table));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void bm_rotate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud cloud = uniform_cloud(n, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rotate_z(cloud, 0.7853981633974483));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void bm_knn_grid(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud cloud = uniform_cloud(n, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(knn_grid(cloud, 8));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void bm_knn_bruteforce(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const PointCloud cloud = uniform_cloud(n, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(knn_bruteforce(cloud, 8));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

}  // namespace

BENCHMARK(bm_scoring)->RangeMultiplier(4)->Range(1 << 12, 1 << 17);
BENCHMARK(bm_sort)
    ->ArgsProduct({benchmark::CreateRange(1 << 12, 1 << 17, 4), {0, 1}})
    ->ArgNames({"n", "exact"});
BENCHMARK(bm_sequence_neighbors)->RangeMultiplier(4)->Range(1 << 12, 1 << 17);
BENCHMARK(bm_encode)->RangeMultiplier(4)->Range(1 << 12, 1 << 17);
BENCHMARK(bm_rotate)->RangeMultiplier(4)->Range(1 << 12, 1 << 17);
BENCHMARK(bm_knn_grid)->RangeMultiplier(4)->Range(1 << 12, 1 << 15);
BENCHMARK(bm_knn_bruteforce)->RangeMultiplier(4)->Range(1 << 10, 1 << 13);
