// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mmcoex/csv.hpp"
#include "mmcoex/error.hpp"
#include "mmcoex/ingest.hpp"
#include "scenes.hpp"

using namespace mmcoex;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const std::string kHeader = std::string(kFsDatabaseHeader) + "\n";

std::string row(const std::string& link, double beamwidth = 1.0, const std::string& tx = "-87.62,41.89") {
    return "P1," + link + ",-87.63,41.88,30," + tx + ",45," +
           csv::format_double(beamwidth) + ",-1.5,5,73.5,1000\n";
}

const GeoPoint kOrigin{-87.6359, 41.8789};

std::string square_feature(double lon, double lat, const std::string& height) {
    const auto p = [](double x, double y) {
        return "[" + csv::format_double(x) + "," + csv::format_double(y) + "]";
    };
    const double d = 0.0002;
    return R"({"type":"Feature","properties":{"height_m":)" + height +
           R"(},"geometry":{"type":"Polygon","coordinates":[[)" + p(lon, lat) + "," +
           p(lon + d, lat) + "," + p(lon + d, lat + d) + "," + p(lon, lat + d) + "," + p(lon, lat) +
           "]]}}";
}

std::string collection(const std::vector<std::string>& features) {
    std::string s = R"({"type":"FeatureCollection","features":[)";
    for (std::size_t i = 0; i < features.size(); ++i) {
        s += (i ? "," : "") + features[i];
    }
    return s + "]}";
}

} // namespace

TEST_CASE("FS database: valid rows load", "[ingest]") {
    const auto r = parse_fs_database(kHeader + row("L1") + row("L2") + row("L3"));
    REQUIRE(r.stations.size() == 3);
    CHECK(r.rejected.empty());
    const auto& s = r.stations[0];
    CHECK(s.pair_id == "P1");
    CHECK(s.link_id == "L1");
    CHECK(s.rx_pos == GeoPoint{-87.63, 41.88});
    CHECK(s.rx_height_m == 30.0);
    CHECK(s.tilt_deg == -1.5);
    CHECK(s.center_freq_ghz == 73.5);
}

TEST_CASE("FS database: bad rows are rejected with line and field", "[ingest]") {
    const auto r = parse_fs_database(kHeader + row("L1") + row("L2", 2.0) + row("L3", 1.0, "-87.63,41.88") +
                                     "P1,L4,-87.63,abc,30,-87.62,41.89,45,1,0,5,73.5,1000\n" +
                                     "P1,L5,-87.63\n");
    REQUIRE(r.stations.size() == 1);
    REQUIRE(r.rejected.size() == 4);
    CHECK(r.rejected[0].line == 3);
    CHECK(r.rejected[0].field == "beamwidth_deg");
    CHECK(r.rejected[1].line == 4);
    CHECK_THAT(r.rejected[1].message, ContainsSubstring("transmitter"));
    CHECK(r.rejected[2].field == "rx_lat");
    CHECK(r.rejected[3].line == 6);
    CHECK_THAT(to_string(r.rejected[0]), ContainsSubstring("line 3"));
}

TEST_CASE("FS database: header handling", "[ingest]") {
    CHECK_THROWS_AS(parse_fs_database(""), InputError);
    CHECK_THROWS_AS(parse_fs_database("pair_id,link_id,rx_lon\nP1,L1,0\n"), InputError);
    CHECK_THROWS_AS(load_fs_database("/nonexistent/fs.csv"), InputError);
    // Columns may appear in any order and extras are ignored.
    const auto r = parse_fs_database(
        "operator,link_id,pair_id,rx_lat,rx_lon,rx_height_m,tx_lon,tx_lat,max_gain_dbi,"
        "beamwidth_deg,tilt_deg,noise_figure_db,center_freq_ghz,bandwidth_mhz\n"
        "acme,L1,P1,41.88,-87.63,30,-87.62,41.89,45,1,0,5,83.5,500\n");
    REQUIRE(r.stations.size() == 1);
    CHECK(r.stations[0].rx_pos == GeoPoint{-87.63, 41.88});
    CHECK(r.stations[0].bandwidth_mhz == 500.0);
}

TEST_CASE("FixedStation validation", "[ingest]") {
    FixedStation fs;
    fs.pair_id = "P";
    fs.link_id = "L";
    fs.rx_pos = {-87.63, 41.88};
    fs.tx_pos = {-87.62, 41.89};
    fs.rx_height_m = 20;
    CHECK_NOTHROW(validate(fs));
    auto bad = fs;
    bad.center_freq_ghz = 78.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = fs;
    bad.beamwidth_deg = 0.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = fs;
    bad.rx_height_m = -1;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = fs;
    bad.tilt_deg = 95;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = fs;
    bad.link_id.clear();
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("FS database: write/read round trip", "[ingest][property]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<FixedStation> stations;
    for (int i = 0; i < 200; ++i) {
        FixedStation fs;
        fs.pair_id = "P" + std::to_string(i);
        fs.link_id = fs.pair_id + "-L1";
        fs.rx_pos = {-88 + u(rng), 41 + u(rng)};
        fs.tx_pos = {-88 + u(rng), 41 + u(rng)};
        fs.rx_height_m = 100 * u(rng);
        fs.max_gain_dbi = 40 + 10 * u(rng);
        fs.beamwidth_deg = 0.1 + 1.1 * u(rng);
        fs.tilt_deg = -20 + 40 * u(rng);
        fs.center_freq_ghz = u(rng) < 0.5 ? 71 + 5 * u(rng) : 81 + 5 * u(rng);
        fs.bandwidth_mhz = 250 + 750 * u(rng);
        stations.push_back(fs);
    }
    const auto back = parse_fs_database(fs_database_csv(stations));
    CHECK(back.rejected.empty());
    CHECK(back.stations == stations);
}

TEST_CASE("Buildings: polygons, multipolygons and rejections", "[ingest]") {
    const auto one = parse_buildings(collection({square_feature(-87.636, 41.879, "20")}), kOrigin);
    REQUIRE(one.footprints.size() == 1);
    CHECK(one.footprints[0].vertices().size() == 4);
    CHECK(one.footprints[0].height_m() == 20.0);

    const auto neg = parse_buildings(
        collection({square_feature(-87.636, 41.879, "-3"), square_feature(-87.635, 41.879, "12")}),
        kOrigin);
    CHECK(neg.footprints.size() == 1);
    REQUIRE(neg.rejected.size() == 1);
    CHECK(neg.rejected[0].line == 1);
    CHECK(neg.rejected[0].field == "height_m");

    const auto missing = parse_buildings(
        collection({R"({"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[[[-87.636,41.879],[-87.6358,41.879],[-87.6358,41.8792],[-87.636,41.879]]]}})"}),
        kOrigin);
    CHECK(missing.footprints.empty());
    CHECK(missing.rejected.size() == 1);

    const std::string multi =
        R"({"type":"Feature","properties":{"height_m":15},"geometry":{"type":"MultiPolygon","coordinates":[)"
        R"([[[-87.636,41.879],[-87.6358,41.879],[-87.6358,41.8792],[-87.636,41.8792],[-87.636,41.879]]],)"
        R"([[[-87.635,41.879],[-87.6348,41.879],[-87.6348,41.8792],[-87.635,41.8792],[-87.635,41.879]]])"
        R"(]}})";
    CHECK(parse_buildings(collection({multi}), kOrigin).footprints.size() == 2);

    const std::string holed =
        R"({"type":"Feature","properties":{"height_m":15},"geometry":{"type":"Polygon","coordinates":[)"
        R"([[-87.636,41.879],[-87.635,41.879],[-87.635,41.880],[-87.636,41.880],[-87.636,41.879]],)"
        R"([[-87.6358,41.8792],[-87.6352,41.8792],[-87.6352,41.8798],[-87.6358,41.8792]])"
        R"(]}})";
    const auto h = parse_buildings(collection({holed}), kOrigin);
    CHECK(h.footprints.size() == 1);
    CHECK(h.holes_dropped == 1);

    const auto bowtie = parse_buildings(
        collection({R"({"type":"Feature","properties":{"height_m":15},"geometry":{"type":"Polygon","coordinates":[[[-87.636,41.879],[-87.635,41.880],[-87.635,41.879],[-87.636,41.880],[-87.636,41.879]]]}})"}),
        kOrigin);
    CHECK(bowtie.footprints.empty());
    CHECK(bowtie.rejected.at(0).field == "geometry");

    CHECK_THROWS_AS(parse_buildings("{not json", kOrigin), InputError);
    CHECK_THROWS_AS(parse_buildings(R"({"type":"Feature"})", kOrigin), InputError);
}

TEST_CASE("Buildings: GeoJSON round trip", "[ingest][property]") {
    std::mt19937_64 rng(29);
    const auto rects = testing::random_rects(rng, 40, 500.0);
    const auto fps = testing::to_footprints(rects);
    const auto back = parse_buildings(buildings_geojson(fps, kOrigin), kOrigin);
    REQUIRE(back.footprints.size() == fps.size());
    for (std::size_t i = 0; i < fps.size(); ++i) {
        CHECK(back.footprints[i].height_m() == fps[i].height_m());
        REQUIRE(back.footprints[i].vertices().size() == fps[i].vertices().size());
        for (std::size_t k = 0; k < fps[i].vertices().size(); ++k) {
            CHECK_THAT(back.footprints[i].vertices()[k].x, WithinAbs(fps[i].vertices()[k].x, 1e-6));
            CHECK_THAT(back.footprints[i].vertices()[k].y, WithinAbs(fps[i].vertices()[k].y, 1e-6));
        }
    }
}

TEST_CASE("Scenario: defaults from an empty file", "[ingest]") {
    const auto s = parse_scenario("");
    CHECK(s.ue_height_m == 1.5);
    CHECK(s.gnb_height_m == 6.0);
    CHECK(s.realizations == 100);
    CHECK(s.inr_threshold_db == -6.0);
    CHECK(s.eirp_max_dbm == std::vector<double>{33.0, 43.0});
    CHECK(s.carrier_ghz == std::vector<double>{73.5, 83.5});
    CHECK(s.area_polygon.size() == 4);
    CHECK(s.ue_beam_cap);
}

TEST_CASE("Scenario: keys, lists and errors", "[ingest]") {
    const auto s = parse_scenario("# comment\n"
                                  "eirp_max_dbm = 43\n"
                                  "carrier_ghz = 83.5\n"
                                  "ue_count = 7   # trailing comment\n"
                                  "ue_beam_cap = false\n"
                                  "area_polygon = -87.64,41.87; -87.63,41.87; -87.63,41.88\n");
    CHECK(s.eirp_max_dbm == std::vector<double>{43.0});
    CHECK(s.carrier_ghz == std::vector<double>{83.5});
    CHECK(s.ue_count == 7);
    CHECK_FALSE(s.ue_beam_cap);
    CHECK(s.area_polygon.size() == 3);

    CHECK_THROWS_AS(parse_scenario("realizations = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("ue_count = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("bogus_key = 1\n"), ConfigError);
    CHECK_NOTHROW(parse_scenario("bogus_key = 1\n", false));
    CHECK_THROWS_AS(parse_scenario("ue_height_m = tall\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("carrier_ghz = 200\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.cfg"), InputError);
}

TEST_CASE("Scenario: text round trip", "[ingest][property]") {
    Scenario s;
    s.name = "round_trip";
    s.origin = {-73.98, 40.75};
    s.area_polygon = default_area(s.origin);
    s.ue_count = 321;
    s.eirp_max_dbm = {30.5, 33, 43};
    s.carrier_ghz = {72.125};
    s.seed = 18446744073709551615ull;
    s.inr_threshold_db = -10;
    s.ue_beam_cap = false;
    s.shadowing = false;
    s.sigma_nlos_db = 8.1;
    s.cull_distance_m = 0;
    CHECK(parse_scenario(scenario_text(s)) == s);
    const auto planar = planar_area(s);
    CHECK_THAT(std::abs(signed_area(planar)), WithinAbs(1e6, 1.0));
}

TEST_CASE("CSV helpers", "[ingest]") {
    CHECK(csv::split_line(R"(a, "b,c" ,"d""e")") == std::vector<std::string>{"a", "b,c", "d\"e"});
    CHECK(csv::parse_double("1.5x") == std::nullopt);
    CHECK(csv::parse_double("1.5e3") == 1500.0);
    CHECK(csv::parse_double("nan") == std::nullopt);
    CHECK(csv::parse_int("42") == 42);
    CHECK(csv::parse_int("4.2") == std::nullopt);
    CHECK(csv::format_double(0.1) == "0.1");
    const auto ls = csv::lines("a\r\n\n# skip\nb\n");
    REQUIRE(ls.size() == 2);
    CHECK(ls[1].first == 4);
    CHECK(ls[1].second == "b");
}
