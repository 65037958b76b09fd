// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mmcoex/error.hpp"
#include "mmcoex/propagation.hpp"

using namespace mmcoex;
using Catch::Matchers::WithinAbs;

namespace {

// d2d such that d3D is exactly `d3d` for the given heights.
double planar_for(double d3d, double ue_h, double fs_h) {
    return std::sqrt(d3d * d3d - (fs_h - ue_h) * (fs_h - ue_h));
}

} // namespace

TEST_CASE("UMi LOS below the breakpoint", "[propagation]") {
    const double d2d = planar_for(100.0, 1.5, 20.0);
    CHECK_THAT(umi_los_db(73.5, d2d, 1.5, 20.0), WithinAbs(111.72574678168391, 1e-9));
    const PathLossConfig cfg{73.5, 4.0, 7.82, false};
    CHECK_THAT(path_loss_db(cfg, d2d, 1.5, 20.0, false, 1.7), WithinAbs(111.72574678168391, 1e-9));
}

TEST_CASE("UMi LOS beyond the breakpoint", "[propagation]") {
    CHECK_THAT(umi_breakpoint_m(73.5, 1.5, 3.0), WithinAbs(980.0, 1e-9));
    CHECK_THAT(umi_los_db(73.5, 2000.0, 1.5, 3.0), WithinAbs(144.93364639009798, 1e-9));
}

TEST_CASE("UMi breakpoint clamps effective heights", "[propagation]") {
    CHECK_THAT(umi_breakpoint_m(73.5, 1.0, 1.0), WithinAbs(4 * 0.1 * 0.1 * 73.5e9 / 3e8, 1e-9));
}

TEST_CASE("UMi NLOS law and LOS lower bound", "[propagation]") {
    CHECK_THAT(umi_nlos_db(73.5, 200.0, 1.5, 20.0), WithinAbs(143.44358637640477, 1e-9));
    CHECK_THAT(umi_nlos_db(73.5, 200.0, 2.5, 20.0), WithinAbs(143.13674308156035, 1e-9));
    CHECK_THAT(umi_los_db(73.5, 200.0, 1.5, 20.0), WithinAbs(118.08622800355755, 1e-9));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(1.0, 5000.0);
    std::uniform_real_distribution<double> h(1.5, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const double dd = d(rng);
        const double hh = h(rng);
        REQUIRE(umi_nlos_db(73.5, dd, 1.5, hh) >= umi_los_db(73.5, dd, 1.5, hh));
    }
}

TEST_CASE("Carrier shift below the breakpoint is 20 log10 of the ratio", "[propagation]") {
    const double shift = umi_los_db(83.5, 150.0, 1.5, 25.0) - umi_los_db(73.5, 150.0, 1.5, 25.0);
    CHECK_THAT(shift, WithinAbs(1.1079827279881431, 1e-9));
}

TEST_CASE("Path loss is non-decreasing in distance", "[propagation][property]") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(1.0, 4000.0);
    std::uniform_real_distribution<double> h(2.0, 80.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = d(rng);
        const double b = a + 10.0;
        const double hh = h(rng);
        REQUIRE(umi_nlos_db(73.5, b, 1.5, hh) >= umi_nlos_db(73.5, a, 1.5, hh));
        if (b <= umi_breakpoint_m(73.5, 1.5, hh) || a > umi_breakpoint_m(73.5, 1.5, hh)) {
            REQUIRE(umi_los_db(73.5, b, 1.5, hh) >= umi_los_db(73.5, a, 1.5, hh));
        }
    }
}

TEST_CASE("path_loss_db: state selection and shadowing", "[propagation]") {
    PathLossConfig cfg;
    const double los = umi_los_db(cfg.carrier_ghz, 200.0, 1.5, 20.0);
    const double nlos = umi_nlos_db(cfg.carrier_ghz, 200.0, 1.5, 20.0);
    CHECK_THAT(path_loss_db(cfg, 200.0, 1.5, 20.0, false, 0.5), WithinAbs(los + 2.0, 1e-9));
    CHECK_THAT(path_loss_db(cfg, 200.0, 1.5, 20.0, true, 0.5), WithinAbs(nlos + 3.91, 1e-9));
    cfg.shadowing_enabled = false;
    CHECK(path_loss_db(cfg, 200.0, 1.5, 20.0, true, 0.5) == nlos);
    CHECK_THROWS_AS(path_loss_db(cfg, 0.5, 1.5, 20.0, false, 0.0), ModelError);
    CHECK_NOTHROW(path_loss_db(cfg, 1.0, 1.5, 20.0, false, 0.0));
    CHECK(beyond_model_range(5000.1));
    CHECK_FALSE(beyond_model_range(5000.0));
}

TEST_CASE("PathLossConfig validation", "[propagation]") {
    CHECK_THROWS_AS(validate(PathLossConfig{0.1, 4, 7.82, true}), ConfigError);
    CHECK_THROWS_AS(validate(PathLossConfig{73.5, -1, 7.82, true}), ConfigError);
    CHECK_NOTHROW(validate(PathLossConfig{}));
}

TEST_CASE("Thermal noise power", "[propagation]") {
    CHECK_THAT(noise_power_dbm({1e9, 290.0, 0.0}), WithinAbs(-83.97518719422808, 1e-9));
    CHECK_THAT(noise_power_dbm({1e9, 290.0, 5.0}), WithinAbs(-78.97518719422808, 1e-9));
    CHECK_THAT(noise_power_dbm({2e9, 290.0, 0.0}) - noise_power_dbm({1e9, 290.0, 0.0}),
               WithinAbs(10.0 * std::log10(2.0), 1e-12));
    CHECK_THROWS_AS(noise_power_dbm({0.0, 290.0, 0.0}), ConfigError);
}
