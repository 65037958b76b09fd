// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mmcoex/error.hpp"
#include "mmcoex/geo.hpp"
#include "mmcoex/spatial_index.hpp"
#include "scenes.hpp"

using namespace mmcoex;
using Catch::Approx;
using Catch::Matchers::WithinAbs;

TEST_CASE("project: origin maps to zero", "[geo]") {
    const GeoPoint origin{-87.63, 41.88};
    const auto p = project(origin, origin);
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
}

TEST_CASE("project: small offsets match R dlat and R dlon cos(lat)", "[geo]") {
    const GeoPoint origin{-87.63, 41.88};
    const auto north = project({-87.63, 41.89}, origin);
    CHECK_THAT(north.x, WithinAbs(0.0, 1e-9));
    CHECK_THAT(north.y, WithinAbs(1111.9492664455875, 1e-6));
    const auto east = project({-87.62, 41.88}, origin);
    CHECK_THAT(east.x, WithinAbs(827.8958422873143, 1e-6));
    CHECK_THAT(east.y, WithinAbs(0.0, 1e-9));
}

TEST_CASE("project: rejects points more than one degree away", "[geo]") {
    const GeoPoint origin{-87.63, 41.88};
    CHECK_THROWS_AS(project({-86.5, 41.88}, origin), ConfigError);
    CHECK_THROWS_AS(project({-87.63, 43.0}, origin), ConfigError);
    CHECK_NOTHROW(project({-86.64, 42.87}, origin));
}

TEST_CASE("validate: rejects out-of-range and non-finite coordinates", "[geo]") {
    CHECK_THROWS_AS(validate(GeoPoint{0.0, 91.0}), ConfigError);
    CHECK_THROWS_AS(validate(GeoPoint{181.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(validate(GeoPoint{std::nan(""), 0.0}), ConfigError);
    CHECK_NOTHROW(validate(GeoPoint{-180.0, -90.0}));
}

TEST_CASE("project/unproject round trip", "[geo][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lon(-179.0, 179.0);
    std::uniform_real_distribution<double> lat(-80.0, 80.0);
    std::uniform_real_distribution<double> off(-0.99, 0.99);
    for (int i = 0; i < 500; ++i) {
        const GeoPoint origin{lon(rng), lat(rng)};
        const GeoPoint p{origin.longitude + off(rng), origin.latitude + off(rng)};
        const auto back = unproject(project(p, origin), origin);
        REQUIRE_THAT(back.longitude, WithinAbs(p.longitude, 1e-9));
        REQUIRE_THAT(back.latitude, WithinAbs(p.latitude, 1e-9));
    }
}

TEST_CASE("polygon helpers", "[geo]") {
    const std::vector<PlanarPoint> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(signed_area(square) == Approx(4.0));
    const std::vector<PlanarPoint> cw{{0, 0}, {0, 2}, {2, 2}, {2, 0}};
    CHECK(signed_area(cw) == Approx(-4.0));
    CHECK(is_simple_polygon(square));
    const std::vector<PlanarPoint> bowtie{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_FALSE(is_simple_polygon(bowtie));
    CHECK(point_in_polygon({1, 1}, square));
    CHECK(point_in_polygon({2, 1}, square));
    CHECK(point_in_polygon({0, 0}, square));
    CHECK_FALSE(point_in_polygon({2.001, 1}, square));
    const auto box = bounding_box(square);
    CHECK(box.min_x == 0.0);
    CHECK(box.max_y == 2.0);
}

TEST_CASE("Footprint: normalizes rings and rejects bad geometry", "[geo]") {
    const Footprint closed({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}, 10.0);
    CHECK(closed.vertices().size() == 4);
    const Footprint dup({{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}}, 10.0);
    CHECK(dup.vertices().size() == 4);
    CHECK_THROWS_AS(Footprint({{0, 0}, {1, 0}}, 10.0), ConfigError);
    CHECK_THROWS_AS(Footprint({{0, 0}, {1, 0}, {2, 0}}, 10.0), ConfigError);
    CHECK_THROWS_AS(Footprint({{0, 0}, {2, 2}, {2, 0}, {0, 2}}, 10.0), ConfigError);
    CHECK_THROWS_AS(Footprint({{0, 0}, {1, 0}, {1, 1}}, 0.0), ConfigError);
    CHECK_THROWS_AS(Footprint({{0, 0}, {1, 0}, {1, 1}}, -3.0), ConfigError);
}

TEST_CASE("segment_intersects_footprint: entry distances", "[geo]") {
    const Footprint square({{4, -1}, {6, -1}, {6, 1}, {4, 1}}, 10.0);
    const auto hit = segment_intersects_footprint({0, 0}, {10, 0}, square);
    CHECK(hit.hit);
    CHECK_THAT(hit.entry_distance_m, WithinAbs(4.0, 1e-12));

    const Footprint above({{4, 5}, {6, 5}, {6, 7}, {4, 7}}, 10.0);
    CHECK_FALSE(segment_intersects_footprint({0, 0}, {10, 0}, above).hit);

    const auto inside = segment_intersects_footprint({5, 0}, {10, 0}, square);
    CHECK(inside.hit);
    CHECK(inside.entry_distance_m == 0.0);

    const auto grazing = segment_intersects_footprint({0, 1}, {10, 1}, square);
    CHECK(grazing.hit);
    CHECK_THAT(grazing.entry_distance_m, WithinAbs(4.0, 1e-12));

    CHECK_FALSE(segment_intersects_footprint({0, 0}, {3.9, 0}, square).hit);
}

TEST_CASE("segment_intersects_footprint agrees with the slab oracle", "[geo][property]") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const auto rects = testing::random_rects(rng, 1, 100.0);
        if (rects.empty()) {
            continue;
        }
        const auto q = testing::random_query(rng, 100.0);
        const auto f = testing::to_footprint(rects[0]);
        const auto got = segment_intersects_footprint(q.ue_pos, q.fs_pos, f);
        const auto want = testing::slab_entry(q.ue_pos, q.fs_pos, rects[0]);
        REQUIRE(got.hit == want.has_value());
        if (want) {
            REQUIRE_THAT(got.entry_distance_m, WithinAbs(*want, 1e-9));
        }
    }
}

namespace {

// Building 20 m deep starting 100 m along the UE->FS ray (UE at the origin).
Footprint wall_at_100m(double height) {
    return Footprint({{100, -10}, {120, -10}, {120, 10}, {100, 10}}, height);
}

} // namespace

TEST_CASE("footprint_blocks: similar-triangle height rule", "[geo]") {
    const BlockageQuery q{{0, 0}, 1.5, {300, 0}, 31.5};
    CHECK(footprint_blocks(q, wall_at_100m(20.0)));
    CHECK_FALSE(footprint_blocks(q, wall_at_100m(11.0)));
    CHECK(footprint_blocks(q, wall_at_100m(11.5)));

    const BlockageQuery flat{{0, 0}, 1.5, {300, 0}, 1.5};
    CHECK(footprint_blocks(flat, wall_at_100m(1.6)));

    const BlockageQuery beside{{0, 50}, 1.5, {300, 50}, 1.5};
    CHECK_FALSE(footprint_blocks(beside, wall_at_100m(60.0)));
}

TEST_CASE("is_blocked: empty index never blocks", "[geo]") {
    const BuildingIndex empty;
    const auto r = is_blocked({{0, 0}, 1.5, {300, 0}, 31.5}, empty);
    CHECK_FALSE(r.blocked);
    CHECK_FALSE(r.blocking_footprint.has_value());
}

TEST_CASE("is_blocked: reports the lowest blocking footprint", "[geo]") {
    const BuildingIndex index({wall_at_100m(5.0),
                               Footprint({{200, -10}, {220, -10}, {220, 10}, {200, 10}}, 50.0),
                               Footprint({{150, -10}, {160, -10}, {160, 10}, {150, 10}}, 50.0)});
    const auto r = is_blocked({{0, 0}, 1.5, {300, 0}, 31.5}, index);
    REQUIRE(r.blocked);
    CHECK(*r.blocking_footprint == 1);
    CHECK(index.covers({155, 0}));
    CHECK_FALSE(index.covers({130, 0}));
}

TEST_CASE("segment_candidates is a superset of true intersections", "[geo][property]") {
    std::mt19937_64 rng(23);
    for (int scene = 0; scene < 200; ++scene) {
        const auto rects = testing::random_rects(rng, 30, 400.0);
        const BuildingIndex index(testing::to_footprints(rects), 37.0);
        for (int i = 0; i < 20; ++i) {
            const auto q = testing::random_query(rng, 450.0);
            const auto cand = index.segment_candidates(q.ue_pos, q.fs_pos);
            REQUIRE(std::is_sorted(cand.begin(), cand.end()));
            for (std::size_t k = 0; k < rects.size(); ++k) {
                if (testing::slab_entry(q.ue_pos, q.fs_pos, rects[k])) {
                    REQUIRE(std::binary_search(cand.begin(), cand.end(), static_cast<std::uint32_t>(k)));
                }
            }
        }
    }
}

TEST_CASE("BuildingIndex caps the cell count for huge extents", "[geo]") {
    const BuildingIndex index({Footprint({{0, 0}, {1, 0}, {1, 1}}, 5.0),
                               Footprint({{1e6, 1e6}, {1e6 + 1, 1e6}, {1e6 + 1, 1e6 + 1}}, 5.0)});
    CHECK(index.cell_size_m() >= 1e6 / BuildingIndex::kMaxCellsPerAxis);
    CHECK(is_blocked({{-1, 0.5}, 1.0, {2, 0.5}, 1.0}, index).blocked);
}

TEST_CASE("fs_off_axis: azimuth and elevation", "[geo]") {
    const PlanarPoint tx{0, 0};
    const PlanarPoint rx{0, 100};
    CHECK_THAT(fs_off_axis(tx, rx, 30, 0, {0, -50}, 1.5).azimuth_deg, WithinAbs(0.0, 1e-9));
    CHECK_THAT(fs_off_axis(tx, rx, 30, 0, {100, 100}, 1.5).azimuth_deg, WithinAbs(90.0, 1e-9));
    CHECK_THAT(fs_off_axis(tx, rx, 30, 0, {0, 200}, 1.5).azimuth_deg, WithinAbs(180.0, 1e-9));
    const auto off = fs_off_axis(tx, rx, 30, -2, {0, 0}, 1.5);
    CHECK_THAT(off.elevation_deg, WithinAbs(13.907551930525841, 1e-9));
    CHECK_THROWS_AS(fs_off_axis(rx, rx, 30, 0, {0, 0}, 1.5), ConfigError);
    CHECK_THROWS_AS(fs_off_axis(tx, rx, 30, 0, rx, 1.5), ConfigError);
}

TEST_CASE("fs_off_axis: azimuth is invariant under rigid motion", "[geo][property]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(-500, 500);
    std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
    for (int i = 0; i < 500; ++i) {
        const PlanarPoint tx{pos(rng), pos(rng)}, rx{pos(rng), pos(rng)}, ue{pos(rng), pos(rng)};
        const double a = ang(rng);
        const PlanarPoint shift{pos(rng), pos(rng)};
        const auto move = [&](PlanarPoint p) {
            return PlanarPoint{p.x * std::cos(a) - p.y * std::sin(a) + shift.x,
                               p.x * std::sin(a) + p.y * std::cos(a) + shift.y};
        };
        const auto before = fs_off_axis(tx, rx, 20, -1, ue, 1.5);
        const auto after = fs_off_axis(move(tx), move(rx), 20, -1, move(ue), 1.5);
        REQUIRE_THAT(after.azimuth_deg, WithinAbs(before.azimuth_deg, 1e-6));
        REQUIRE_THAT(after.elevation_deg, WithinAbs(before.elevation_deg, 1e-6));
        REQUIRE(before.azimuth_deg >= 0.0);
        REQUIRE(before.azimuth_deg <= 180.0);
    }
}

TEST_CASE("ue_off_axis folds differences into [0, 180]", "[geo]") {
    const auto aimed = ue_off_axis(37, 4, 37, 4);
    CHECK(aimed.azimuth_deg == 0.0);
    CHECK(aimed.elevation_deg == 0.0);
    CHECK_THAT(ue_off_axis(10, 0, 350, 0).azimuth_deg, WithinAbs(20.0, 1e-12));
    CHECK_THAT(ue_off_axis(180, 0, 0, 0).azimuth_deg, WithinAbs(180.0, 1e-12));
    CHECK_THAT(ue_off_axis(0, 2.5, 0, -3).elevation_deg, WithinAbs(5.5, 1e-12));
}

TEST_CASE("fold_angle_deg symmetry and periodicity", "[geo][property]") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> x(-1000, 1000);
    std::uniform_int_distribution<int> k(-3, 3);
    for (int i = 0; i < 1000; ++i) {
        const double v = x(rng);
        const double f = fold_angle_deg(v);
        REQUIRE(f >= 0.0);
        REQUIRE(f <= 180.0);
        REQUIRE_THAT(fold_angle_deg(-v), WithinAbs(f, 1e-9));
        REQUIRE_THAT(fold_angle_deg(v + 360.0 * k(rng)), WithinAbs(f, 1e-9));
    }
}

TEST_CASE("bearing_deg is counter-clockwise from east", "[geo]") {
    CHECK_THAT(bearing_deg({0, 0}, {1, 0}), WithinAbs(0.0, 1e-12));
    CHECK_THAT(bearing_deg({0, 0}, {0, 1}), WithinAbs(90.0, 1e-12));
    CHECK_THAT(bearing_deg({0, 0}, {-1, 0}), WithinAbs(180.0, 1e-12));
    CHECK_THAT(bearing_deg({0, 0}, {0, -1}), WithinAbs(270.0, 1e-12));
}
