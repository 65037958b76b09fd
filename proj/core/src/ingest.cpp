// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/ingest.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mmcoex/antenna.hpp"
#include "mmcoex/csv.hpp"
#include "mmcoex/error.hpp"

namespace mmcoex {
namespace {

bool in_eband(double ghz) {
    return (ghz >= 71.0 && ghz <= 76.0) || (ghz >= 81.0 && ghz <= 86.0);
}

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) {
        throw ConfigError(field + ": " + message);
    }
}

} // namespace

void validate(const FixedStation& fs) {
    require(!fs.pair_id.empty(), "pair_id", "must not be empty");
    require(!fs.link_id.empty(), "link_id", "must not be empty");
    try {
        validate(fs.rx_pos);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("rx_lon/rx_lat: ") + e.what());
    }
    try {
        validate(fs.tx_pos);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("tx_lon/tx_lat: ") + e.what());
    }
    require(!(fs.rx_pos == fs.tx_pos), "tx_lon/tx_lat",
            "transmitter coincides with receiver (zero-length beam axis)");
    require(std::isfinite(fs.rx_height_m) && fs.rx_height_m >= 0.0, "rx_height_m",
            "must be non-negative");
    require(std::isfinite(fs.max_gain_dbi), "max_gain_dbi", "must be finite");
    require(fs.beamwidth_deg > 0.0 && fs.beamwidth_deg <= kMaxFsBeamwidthDeg, "beamwidth_deg",
            "must lie in (0, 1.2] degrees");
    require(std::isfinite(fs.tilt_deg) && std::abs(fs.tilt_deg) <= 90.0, "tilt_deg",
            "must lie in [-90, 90] degrees");
    require(std::isfinite(fs.noise_figure_db), "noise_figure_db", "must be finite");
    require(in_eband(fs.center_freq_ghz), "center_freq_ghz",
            "must lie in [71, 76] or [81, 86] GHz");
    require(fs.bandwidth_mhz > 0.0, "bandwidth_mhz", "must be positive");
}

std::string to_string(const Diagnostic& d) {
    std::ostringstream os;
    os << "line " << d.line;
    if (!d.field.empty()) {
        os << ", field " << d.field;
    }
    os << ": " << d.message;
    return os.str();
}

// --- FS database -----------------------------------------------------------

FsLoadResult parse_fs_database(const std::string& text) {
    const auto rows = csv::lines(text);
    if (rows.empty()) {
        throw InputError("FS database has no header");
    }
    const auto header = csv::split_line(rows.front().second);
    const auto required = csv::split_line(kFsDatabaseHeader);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) {
        column.emplace(header[i], i);
    }
    for (const auto& name : required) {
        if (!column.contains(name)) {
            throw InputError("FS database is missing column '" + name + "'");
        }
    }

    FsLoadResult out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& [line_no, line] = rows[r];
        const auto fields = csv::split_line(line);
        if (fields.size() < header.size()) {
            out.rejected.push_back({line_no, "", "expected " + std::to_string(header.size()) +
                                                     " fields, found " +
                                                     std::to_string(fields.size())});
            continue;
        }
        const auto text_of = [&](const std::string& name) -> const std::string& {
            return fields[column.at(name)];
        };
        std::optional<Diagnostic> bad;
        const auto number = [&](const std::string& name) {
            const auto v = csv::parse_double(text_of(name));
            if (!v && !bad) {
                bad = Diagnostic{line_no, name, "unparseable number '" + text_of(name) + "'"};
            }
            return v.value_or(0.0);
        };
        FixedStation fs;
        fs.pair_id = text_of("pair_id");
        fs.link_id = text_of("link_id");
        fs.rx_pos = {number("rx_lon"), number("rx_lat")};
        fs.rx_height_m = number("rx_height_m");
        fs.tx_pos = {number("tx_lon"), number("tx_lat")};
        fs.max_gain_dbi = number("max_gain_dbi");
        fs.beamwidth_deg = number("beamwidth_deg");
        fs.tilt_deg = number("tilt_deg");
        fs.noise_figure_db = number("noise_figure_db");
        fs.center_freq_ghz = number("center_freq_ghz");
        fs.bandwidth_mhz = number("bandwidth_mhz");
        if (bad) {
            out.rejected.push_back(*bad);
            continue;
        }
        try {
            validate(fs);
        } catch (const ConfigError& e) {
            const std::string what = e.what();
            const auto colon = what.find(": ");
            out.rejected.push_back({line_no, what.substr(0, colon), what.substr(colon + 2)});
            continue;
        }
        out.stations.push_back(std::move(fs));
    }
    return out;
}

FsLoadResult load_fs_database(const std::filesystem::path& path) {
    try {
        return parse_fs_database(csv::read_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string fs_database_csv(const std::vector<FixedStation>& stations) {
    const auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    };
    using csv::format_double;
    std::string out = std::string(kFsDatabaseHeader) + "\n";
    for (const auto& s : stations) {
        out += quote(s.pair_id) + ',' + quote(s.link_id) + ',' + format_double(s.rx_pos.longitude) +
               ',' + format_double(s.rx_pos.latitude) + ',' + format_double(s.rx_height_m) + ',' +
               format_double(s.tx_pos.longitude) + ',' + format_double(s.tx_pos.latitude) + ',' +
               format_double(s.max_gain_dbi) + ',' + format_double(s.beamwidth_deg) + ',' +
               format_double(s.tilt_deg) + ',' + format_double(s.noise_figure_db) + ',' +
               format_double(s.center_freq_ghz) + ',' + format_double(s.bandwidth_mhz) + '\n';
    }
    return out;
}

// --- Buildings -------------------------------------------------------------

namespace {

using nlohmann::json;

std::vector<PlanarPoint> ring_to_planar(const json& ring, const GeoPoint& origin) {
    if (!ring.is_array()) {
        throw ConfigError("polygon ring is not an array");
    }
    std::vector<PlanarPoint> pts;
    pts.reserve(ring.size());
    for (const auto& c : ring) {
        if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
            throw ConfigError("ring position is not a [lon, lat] pair");
        }
        pts.push_back(project({c[0].get<double>(), c[1].get<double>()}, origin));
    }
    return pts;
}

} // namespace

BuildingLoadResult parse_buildings(const std::string& geojson, const GeoPoint& origin) {
    json doc;
    try {
        doc = json::parse(geojson);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("buildings GeoJSON is malformed: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array()) {
        throw InputError("buildings file must be a GeoJSON FeatureCollection");
    }

    BuildingLoadResult out;
    std::size_t feature_no = 0;
    for (const auto& feature : doc["features"]) {
        ++feature_no;
        try {
            if (!feature.is_object() || !feature.contains("geometry") ||
                !feature["geometry"].is_object()) {
                throw ConfigError("feature has no geometry");
            }
            const auto& props = feature.value("properties", json::object());
            if (!props.is_object() || !props.contains("height_m")) {
                out.rejected.push_back({feature_no, "height_m", "missing height"});
                continue;
            }
            if (!props["height_m"].is_number()) {
                out.rejected.push_back({feature_no, "height_m", "height is not numeric"});
                continue;
            }
            const double height = props["height_m"].get<double>();
            if (!(height > 0.0)) {
                out.rejected.push_back({feature_no, "height_m", "height must be positive"});
                continue;
            }

            const auto& geom = feature["geometry"];
            const std::string type = geom.value("type", "");
            if (!geom.contains("coordinates") || !geom["coordinates"].is_array()) {
                throw ConfigError("geometry has no coordinates");
            }
            std::vector<json> polygons;
            if (type == "Polygon") {
                polygons.push_back(geom["coordinates"]);
            } else if (type == "MultiPolygon") {
                for (const auto& p : geom["coordinates"]) {
                    polygons.push_back(p);
                }
            } else {
                throw ConfigError("unsupported geometry type '" + type + "'");
            }

            std::vector<Footprint> parts;
            std::size_t holes = 0;
            for (const auto& poly : polygons) {
                if (!poly.is_array() || poly.empty()) {
                    throw ConfigError("polygon has no rings");
                }
                holes += poly.size() - 1;
                parts.emplace_back(ring_to_planar(poly[0], origin), height);
            }
            out.holes_dropped += holes;
            for (auto& f : parts) {
                out.footprints.push_back(std::move(f));
            }
        } catch (const ConfigError& e) {
            out.rejected.push_back({feature_no, "geometry", e.what()});
        } catch (const json::exception& e) {
            out.rejected.push_back({feature_no, "geometry", e.what()});
        }
    }
    return out;
}

BuildingLoadResult load_buildings(const std::filesystem::path& path, const GeoPoint& origin) {
    try {
        return parse_buildings(csv::read_file(path), origin);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string buildings_geojson(const std::vector<Footprint>& footprints, const GeoPoint& origin) {
    // Hand-formatted so coordinates keep full round-trip precision and the
    // output is byte-stable.
    std::string out = "{\"type\":\"FeatureCollection\",\"features\":[\n";
    for (std::size_t i = 0; i < footprints.size(); ++i) {
        const auto& f = footprints[i];
        out += "{\"type\":\"Feature\",\"properties\":{\"height_m\":" +
               csv::format_double(f.height_m()) +
               "},\"geometry\":{\"type\":\"Polygon\",\"coordinates\":[[";
        const auto& v = f.vertices();
        for (std::size_t k = 0; k <= v.size(); ++k) {
            const GeoPoint g = unproject(v[k % v.size()], origin);
            out += (k ? "," : "");
            out += "[" + csv::format_double(g.longitude) + "," + csv::format_double(g.latitude) + "]";
        }
        out += "]]}}";
        out += (i + 1 < footprints.size() ? ",\n" : "\n");
    }
    out += "]}\n";
    return out;
}

// --- Scenario --------------------------------------------------------------

std::vector<GeoPoint> default_area(const GeoPoint& origin) {
    constexpr double h = 500.0;
    return {unproject({-h, -h}, origin), unproject({h, -h}, origin), unproject({h, h}, origin),
            unproject({-h, h}, origin)};
}

std::vector<PlanarPoint> planar_area(const Scenario& s) {
    std::vector<PlanarPoint> out;
    out.reserve(s.area_polygon.size());
    for (const auto& g : s.area_polygon) {
        out.push_back(project(g, s.origin));
    }
    return out;
}

void validate(const Scenario& s) {
    validate(s.origin);
    require(s.area_polygon.size() >= 3, "area_polygon", "needs at least 3 vertices");
    const auto area = planar_area(s);
    require(signed_area(area) != 0.0 && is_simple_polygon(area), "area_polygon",
            "must be a simple polygon with non-zero area");
    require(s.ue_count >= 0, "ue_count", "must be non-negative");
    require(s.realizations >= 1, "realizations", "must be at least 1");
    require(s.ue_height_m > 0.0 && std::isfinite(s.ue_height_m), "ue_height_m", "must be positive");
    require(s.gnb_height_m >= 0.0 && std::isfinite(s.gnb_height_m), "gnb_height_m",
            "must be non-negative");
    require(s.gnb_distance_min_m > 0.0 && s.gnb_distance_max_m >= s.gnb_distance_min_m &&
                std::isfinite(s.gnb_distance_max_m),
            "gnb_distance_min_m", "need 0 < min <= max");
    require(!s.eirp_max_dbm.empty(), "eirp_max_dbm", "needs at least one value");
    require(!s.carrier_ghz.empty(), "carrier_ghz", "needs at least one value");
    for (double c : s.carrier_ghz) {
        require(c >= 0.5 && c <= 100.0, "carrier_ghz", "must lie in [0.5, 100] GHz");
    }
    require(std::isfinite(s.inr_threshold_db), "inr_threshold_db", "must be finite");
    require(s.ue_beam_3db_deg > 0.0, "ue_beam_3db_deg", "must be positive");
    require(s.ue_element_3db_deg > 0.0, "ue_element_3db_deg", "must be positive");
    require(s.ue_ftbr_db > 0.0, "ue_ftbr_db", "must be positive");
    require(s.fs_ftbr_db > 0.0, "fs_ftbr_db", "must be positive");
    require(s.sigma_los_db >= 0.0 && s.sigma_nlos_db >= 0.0, "sigma_los_db",
            "sigmas must be non-negative");
    require(s.noise_bandwidth_hz > 0.0, "noise_bandwidth_hz", "must be positive");
    require(s.noise_temperature_k > 0.0, "noise_temperature_k", "must be positive");
    require(s.cull_distance_m >= 0.0, "cull_distance_m", "must be non-negative");
}

namespace {

double parse_number(std::string_view key, std::string_view v) {
    const auto d = csv::parse_double(v);
    if (!d) {
        throw ConfigError(std::string(key) + ": unparseable number '" + std::string(v) + "'");
    }
    return *d;
}

std::int64_t parse_integer(std::string_view key, std::string_view v) {
    const auto i = csv::parse_int(v);
    if (!i) {
        throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
    }
    return *i;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view v) {
    v = csv::trim(v);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(std::string(key) + ": expected an unsigned integer, got '" +
                          std::string(v) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    v = csv::trim(v);
    if (v == "true" || v == "1" || v == "on" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "off" || v == "no") {
        return false;
    }
    throw ConfigError(std::string(key) + ": expected a boolean, got '" + std::string(v) + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
    std::vector<double> out;
    for (const auto& f : csv::split_line(v)) {
        out.push_back(parse_number(key, f));
    }
    return out;
}

std::vector<GeoPoint> parse_polygon(std::string_view key, std::string_view v) {
    std::vector<GeoPoint> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        auto end = v.find(';', pos);
        if (end == std::string_view::npos) {
            end = v.size();
        }
        const auto vertex = csv::trim(v.substr(pos, end - pos));
        if (!vertex.empty()) {
            const auto f = csv::split_line(vertex);
            if (f.size() != 2) {
                throw ConfigError(std::string(key) + ": vertex '" + std::string(vertex) +
                                  "' is not lon,lat");
            }
            out.push_back({parse_number(key, f[0]), parse_number(key, f[1])});
        }
        pos = end + 1;
    }
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + csv::format_double(v[i]);
    }
    return out;
}

using Setter = std::function<void(Scenario&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        const auto number = [&t](const char* key, double Scenario::*field) {
            t[key] = [field](Scenario& s, std::string_view k, std::string_view v) {
                s.*field = parse_number(k, v);
            };
        };
        const auto boolean = [&t](const char* key, bool Scenario::*field) {
            t[key] = [field](Scenario& s, std::string_view k, std::string_view v) {
                s.*field = parse_bool(k, v);
            };
        };
        const auto list = [&t](const char* key, std::vector<double> Scenario::*field) {
            t[key] = [field](Scenario& s, std::string_view k, std::string_view v) {
                s.*field = parse_list(k, v);
            };
        };
        t["name"] = [](Scenario& s, std::string_view, std::string_view v) { s.name = std::string(v); };
        t["origin_lon"] = [](Scenario& s, std::string_view k, std::string_view v) {
            s.origin.longitude = parse_number(k, v);
        };
        t["origin_lat"] = [](Scenario& s, std::string_view k, std::string_view v) {
            s.origin.latitude = parse_number(k, v);
        };
        t["area_polygon"] = [](Scenario& s, std::string_view k, std::string_view v) {
            s.area_polygon = parse_polygon(k, v);
        };
        t["ue_count"] = [](Scenario& s, std::string_view k, std::string_view v) {
            s.ue_count = parse_integer(k, v);
        };
        t["realizations"] = [](Scenario& s, std::string_view k, std::string_view v) {
            s.realizations = parse_integer(k, v);
        };
        t["seed"] = [](Scenario& s, std::string_view k, std::string_view v) {
            s.seed = parse_unsigned(k, v);
        };
        number("ue_height_m", &Scenario::ue_height_m);
        number("gnb_height_m", &Scenario::gnb_height_m);
        number("gnb_distance_min_m", &Scenario::gnb_distance_min_m);
        number("gnb_distance_max_m", &Scenario::gnb_distance_max_m);
        list("eirp_max_dbm", &Scenario::eirp_max_dbm);
        list("carrier_ghz", &Scenario::carrier_ghz);
        number("inr_threshold_db", &Scenario::inr_threshold_db);
        boolean("ue_beam_cap", &Scenario::ue_beam_cap);
        number("ue_beam_3db_deg", &Scenario::ue_beam_3db_deg);
        number("ue_element_3db_deg", &Scenario::ue_element_3db_deg);
        number("ue_ftbr_db", &Scenario::ue_ftbr_db);
        number("fs_ftbr_db", &Scenario::fs_ftbr_db);
        boolean("shadowing", &Scenario::shadowing);
        number("sigma_los_db", &Scenario::sigma_los_db);
        number("sigma_nlos_db", &Scenario::sigma_nlos_db);
        number("noise_bandwidth_hz", &Scenario::noise_bandwidth_hz);
        number("noise_temperature_k", &Scenario::noise_temperature_k);
        number("cull_distance_m", &Scenario::cull_distance_m);
        return t;
    }();
    return table;
}

} // namespace

Scenario parse_scenario(const std::string& text, bool strict) {
    Scenario s;
    bool has_area = false;
    for (const auto& [line_no, line] : csv::lines(text)) {
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = csv::trim(body.substr(0, hash));
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = csv::trim(body.substr(0, eq));
        const auto value = csv::trim(body.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            if (strict) {
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                                  std::string(key) + "'");
            }
            continue;
        }
        try {
            it->second(s, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
        has_area = has_area || key == "area_polygon";
    }
    if (!has_area) {
        s.area_polygon = default_area(s.origin);
    }
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path, bool strict) {
    const std::string text = csv::read_file(path);
    try {
        return parse_scenario(text, strict);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string scenario_text(const Scenario& s) {
    using csv::format_double;
    std::ostringstream os;
    os << "name = " << s.name << '\n'
       << "origin_lon = " << format_double(s.origin.longitude) << '\n'
       << "origin_lat = " << format_double(s.origin.latitude) << '\n'
       << "area_polygon = ";
    for (std::size_t i = 0; i < s.area_polygon.size(); ++i) {
        os << (i ? "; " : "") << format_double(s.area_polygon[i].longitude) << ','
           << format_double(s.area_polygon[i].latitude);
    }
    os << '\n'
       << "ue_count = " << s.ue_count << '\n'
       << "ue_height_m = " << format_double(s.ue_height_m) << '\n'
       << "gnb_height_m = " << format_double(s.gnb_height_m) << '\n'
       << "gnb_distance_min_m = " << format_double(s.gnb_distance_min_m) << '\n'
       << "gnb_distance_max_m = " << format_double(s.gnb_distance_max_m) << '\n'
       << "eirp_max_dbm = " << join(s.eirp_max_dbm) << '\n'
       << "carrier_ghz = " << join(s.carrier_ghz) << '\n'
       << "realizations = " << s.realizations << '\n'
       << "seed = " << s.seed << '\n'
       << "inr_threshold_db = " << format_double(s.inr_threshold_db) << '\n'
       << "ue_beam_cap = " << (s.ue_beam_cap ? "true" : "false") << '\n'
       << "ue_beam_3db_deg = " << format_double(s.ue_beam_3db_deg) << '\n'
       << "ue_element_3db_deg = " << format_double(s.ue_element_3db_deg) << '\n'
       << "ue_ftbr_db = " << format_double(s.ue_ftbr_db) << '\n'
       << "fs_ftbr_db = " << format_double(s.fs_ftbr_db) << '\n'
       << "shadowing = " << (s.shadowing ? "true" : "false") << '\n'
       << "sigma_los_db = " << format_double(s.sigma_los_db) << '\n'
       << "sigma_nlos_db = " << format_double(s.sigma_nlos_db) << '\n'
       << "noise_bandwidth_hz = " << format_double(s.noise_bandwidth_hz) << '\n'
       << "noise_temperature_k = " << format_double(s.noise_temperature_k) << '\n'
       << "cull_distance_m = " << format_double(s.cull_distance_m) << '\n';
    return os.str();
}

} // namespace mmcoex
