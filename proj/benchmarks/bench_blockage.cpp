// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mmcoex/spatial_index.hpp"

using namespace mmcoex;

namespace {

// Square footprints on a regular lattice with random heights.
std::vector<Footprint> lattice(int n, double pitch, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> height(10.0, 60.0);
    std::vector<Footprint> out;
    const double half = 0.4 * pitch;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double cx = i * pitch;
            const double cy = j * pitch;
            out.emplace_back(std::vector<PlanarPoint>{{cx - half, cy - half},
                                                      {cx + half, cy - half},
                                                      {cx + half, cy + half},
                                                      {cx - half, cy + half}},
                             height(rng));
        }
    }
    return out;
}

std::vector<BlockageQuery> queries(int n, double extent, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.0, extent);
    std::uniform_real_distribution<double> fs_h(12.0, 80.0);
    std::vector<BlockageQuery> out;
    for (int i = 0; i < n; ++i) {
        out.push_back({{pos(rng), pos(rng)}, 1.5, {pos(rng), pos(rng)}, fs_h(rng)});
    }
    return out;
}

void BM_BlockageIndexed(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    const BuildingIndex index(lattice(n, 100.0, rng));
    const auto qs = queries(1024, n * 100.0, rng);
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_blocked(qs[k++ & 1023], index));
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_BlockageBruteForce(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    const auto buildings = lattice(n, 100.0, rng);
    const auto qs = queries(1024, n * 100.0, rng);
    std::size_t k = 0;
    for (auto _ : state) {
        const auto& q = qs[k++ & 1023];
        bool blocked = false;
        for (const auto& f : buildings) {
            if (footprint_blocks(q, f)) {
                blocked = true;
                break;
            }
        }
        benchmark::DoNotOptimize(blocked);
    }
    state.SetItemsProcessed(state.iterations());
}

} // namespace

BENCHMARK(BM_BlockageIndexed)->Arg(10)->Arg(20)->Arg(40);
BENCHMARK(BM_BlockageBruteForce)->Arg(10)->Arg(20)->Arg(40);
