// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "mmcoex/engine.hpp"
#include "mmcoex/propagation.hpp"

#ifdef MMCOEX_BENCH_GRID
#include "generate.hpp"
#endif

using namespace mmcoex;

namespace {

void BM_EvaluateLink(benchmark::State& state) {
    FsSite fs;
    fs.rx = {0.0, 0.0};
    fs.tx = {1000.0, 0.0};
    fs.height_m = 25.0;
    fs.antenna = {43.0, 1.0, 0.0, 55.0, std::make_shared<const FsPatternTable>(FsPatternTable::fcc_eband())};
    fs.noise_power_dbm = noise_power_dbm({1e9, 290.0, 5.0});
    const UserTerminal ue{{300.0, 40.0}, 1.5, 170.0, 3.0};
    const BuildingIndex none;
    const LinkModel model;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_link(ue, fs, none, model, 0.3));
    }
}

#ifdef MMCOEX_BENCH_GRID
// One realization per iteration on a 10x10 Manhattan grid with rooftop FSs.
void BM_RealizationGrid(benchmark::State& state) {
    gen::GridParams grid;
    gen::RegistryParams reg;
    reg.stations = static_cast<std::size_t>(state.range(0));
    const auto buildings = gen::generate_grid(grid, 3);
    const auto registry = gen::generate_rooftop_registry(reg, grid, buildings, 4);
    const auto scenario = gen::grid_scenario(grid, 100, 1, 3);
    auto cfg = simulation_config(scenario, 33.0, 73.5);
    cfg.threads = 1;
    const SiteOptions opt{scenario.origin, std::make_shared<const FsPatternTable>(FsPatternTable::fcc_eband()),
                          scenario.fs_ftbr_db, scenario.noise_bandwidth_hz, scenario.noise_temperature_k};
    std::vector<FsSite> sites;
    for (const auto& st : registry) {
        sites.push_back(make_site(st, opt));
    }
    const BuildingIndex index(buildings);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(cfg, sites, index));
        ++cfg.seed;
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_RealizationGrid)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
#endif

} // namespace

BENCHMARK(BM_EvaluateLink);
BENCHMARK_MAIN();
