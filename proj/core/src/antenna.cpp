// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmcoex/csv.hpp"
#include "mmcoex/error.hpp"

namespace mmcoex {
namespace {

void validate_rows(const std::vector<PatternRow>& rows, const char* axis) {
    const auto fail = [axis](const std::string& what) {
        throw ConfigError(std::string("FS pattern table (") + axis + "): " + what);
    };
    if (rows.empty()) {
        fail("no rows");
    }
    if (rows.front().angle_lo_deg != 0.0) {
        fail("first row must start at 0 degrees");
    }
    if (rows.back().angle_hi_deg != 180.0) {
        fail("last row must end at 180 degrees");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!(r.angle_hi_deg > r.angle_lo_deg)) {
            fail("row " + std::to_string(i + 1) + " has an empty angle range");
        }
        if (!std::isfinite(r.attenuation_db) || r.attenuation_db < 0.0) {
            fail("row " + std::to_string(i + 1) + " has a negative attenuation");
        }
        if (i > 0) {
            if (r.angle_lo_deg != rows[i - 1].angle_hi_deg) {
                fail("row " + std::to_string(i + 1) + " is not contiguous with the previous row");
            }
            if (r.attenuation_db < rows[i - 1].attenuation_db) {
                fail("row " + std::to_string(i + 1) + " decreases attenuation");
            }
        }
    }
}

double lookup(const std::vector<PatternRow>& rows, double angle) {
    if (!(angle >= 0.0 && angle <= 180.0)) {
        std::ostringstream os;
        os << "off-axis angle " << angle << " outside the pattern table coverage [0, 180]";
        throw ConfigError(os.str());
    }
    // First row whose upper edge exceeds the angle; 180 falls in the last row.
    const auto it = std::upper_bound(rows.begin(), rows.end(), angle,
                                     [](double a, const PatternRow& r) { return a < r.angle_hi_deg; });
    return it == rows.end() ? rows.back().attenuation_db : it->attenuation_db;
}

} // namespace

FsPatternTable::FsPatternTable(std::vector<PatternRow> azimuth, std::vector<PatternRow> elevation)
    : azimuth_(std::move(azimuth)), elevation_(std::move(elevation)) {
    validate_rows(azimuth_, "az");
    validate_rows(elevation_, "el");
}

FsPatternTable FsPatternTable::fcc_eband() {
    std::vector<PatternRow> rows{
        {0, 5, 0},     {5, 10, 35},   {10, 15, 40},   {15, 20, 45},
        {20, 30, 50},  {30, 100, 50}, {100, 140, 55}, {140, 180, 55},
    };
    return FsPatternTable(rows, rows);
}

FsPatternTable FsPatternTable::load_csv(const std::filesystem::path& path) {
    try {
        return parse_csv(csv::read_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

FsPatternTable FsPatternTable::parse_csv(const std::string& text) {
    const auto rows = csv::lines(text);
    if (rows.empty()) {
        throw InputError("pattern table is empty");
    }
    const auto header = csv::split_line(rows.front().second);
    const std::vector<std::string> expected{"axis", "angle_lo_deg", "angle_hi_deg", "attenuation_db"};
    if (header != expected) {
        throw InputError("pattern table header must be axis,angle_lo_deg,angle_hi_deg,attenuation_db");
    }
    std::vector<PatternRow> az;
    std::vector<PatternRow> el;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& [line_no, line] = rows[i];
        const auto f = csv::split_line(line);
        const auto where = "line " + std::to_string(line_no);
        if (f.size() != 4) {
            throw InputError(where + ": expected 4 fields");
        }
        const auto lo = csv::parse_double(f[1]);
        const auto hi = csv::parse_double(f[2]);
        const auto att = csv::parse_double(f[3]);
        if (!lo || !hi || !att) {
            throw InputError(where + ": unparseable number");
        }
        PatternRow r{*lo, *hi, *att};
        if (f[0] == "az") {
            az.push_back(r);
        } else if (f[0] == "el") {
            el.push_back(r);
        } else {
            throw InputError(where + ": axis must be az or el");
        }
    }
    return FsPatternTable(std::move(az), std::move(el));
}

std::string FsPatternTable::to_csv() const {
    std::string out = "axis,angle_lo_deg,angle_hi_deg,attenuation_db\n";
    for (const auto* rows : {&azimuth_, &elevation_}) {
        const char* name = rows == &azimuth_ ? "az" : "el";
        for (const auto& r : *rows) {
            out += name;
            out += ',' + csv::format_double(r.angle_lo_deg) + ',' + csv::format_double(r.angle_hi_deg) +
                   ',' + csv::format_double(r.attenuation_db) + '\n';
        }
    }
    return out;
}

double FsPatternTable::attenuation_db(Axis axis, double angle_deg) const {
    return lookup(rows(axis), angle_deg);
}

double fs_gain_dbi(const FsAntenna& a, const OffAxisAngles& off) {
    if (!a.pattern) {
        throw ConfigError("FS antenna has no pattern table");
    }
    const double att = a.pattern->attenuation_db(FsPatternTable::Axis::Azimuth, off.azimuth_deg) +
                       a.pattern->attenuation_db(FsPatternTable::Axis::Elevation,
                                                 std::abs(off.elevation_deg));
    return a.max_gain_dbi - std::min(att, a.ftbr_db);
}

namespace {

double quadratic_rolloff(double angle_deg, double width_deg) {
    const double r = angle_deg / width_deg;
    return 12.0 * r * r;
}

} // namespace

AxisAttenuation ue_beam_attenuation_db(const UeAntenna& a, const OffAxisAngles& off) {
    return {quadratic_rolloff(off.azimuth_deg, a.beam_3db_deg),
            quadratic_rolloff(off.elevation_deg, a.beam_3db_deg)};
}

AxisAttenuation ue_element_attenuation_db(const UeAntenna& a, const OffAxisAngles& off) {
    return {quadratic_rolloff(off.azimuth_deg, a.element_3db_deg),
            quadratic_rolloff(off.elevation_deg, a.element_3db_deg)};
}

double ue_radiated_dbm(const UeAntenna& a, const OffAxisAngles& off) {
    const auto beam = ue_beam_attenuation_db(a, off);
    const auto elem = ue_element_attenuation_db(a, off);
    double beam_loss = beam.az_db + beam.el_db;
    if (a.beam_cap) {
        beam_loss = std::min(beam_loss, a.ftbr_db);
    }
    return a.eirp_max_dbm - beam_loss - std::min(elem.az_db + elem.el_db, a.ftbr_db);
}

} // namespace mmcoex
