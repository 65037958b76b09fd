// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "mmcoex/geo.hpp"

namespace mmcoex {

/// Regulatory ceiling on the fixed-station 3 dB beamwidth in the e-band.
inline constexpr double kMaxFsBeamwidthDeg = 1.2;

struct PatternRow {
    double angle_lo_deg = 0.0;
    double angle_hi_deg = 0.0;
    double attenuation_db = 0.0;
};

/// Piecewise-constant FS receive-pattern suppression, one table per plane.
/// Rows are half-open [lo, hi) except the last, which includes 180°.
class FsPatternTable {
public:
    enum class Axis { Azimuth, Elevation };

    /// Throws ConfigError unless each axis tiles [0, 180] with contiguous
    /// rows whose attenuation never decreases.
    FsPatternTable(std::vector<PatternRow> azimuth, std::vector<PatternRow> elevation);

    /// FCC Part 101 minimum radiation suppression for 71-76 / 81-86 GHz,
    /// applied to both planes.
    static FsPatternTable fcc_eband();

    /// CSV with header `axis,angle_lo_deg,angle_hi_deg,attenuation_db`.
    static FsPatternTable load_csv(const std::filesystem::path& path);
    static FsPatternTable parse_csv(const std::string& text);
    std::string to_csv() const;

    /// Throws ConfigError for angles outside [0, 180].
    double attenuation_db(Axis axis, double angle_deg) const;

    const std::vector<PatternRow>& rows(Axis axis) const {
        return axis == Axis::Azimuth ? azimuth_ : elevation_;
    }

private:
    std::vector<PatternRow> azimuth_;
    std::vector<PatternRow> elevation_;
};

struct FsAntenna {
    double max_gain_dbi = 0.0;
    double beamwidth_deg = 1.0;
    double tilt_deg = 0.0;
    double ftbr_db = 55.0;
    std::shared_ptr<const FsPatternTable> pattern;
};

/// Receive gain toward an interferer:
/// G_max - min(A_az(θ) + A_el(|φ|), FTBR).
double fs_gain_dbi(const FsAntenna& a, const OffAxisAngles& off);

struct UeAntenna {
    double eirp_max_dbm = 33.0;
    double beam_3db_deg = 25.0;
    double element_3db_deg = 65.0;
    double ftbr_db = 30.0;
    /// Floor the beam-pattern sum at ftbr_db as well as the element sum.
    /// When false the beam roll-off is unbounded.
    bool beam_cap = true;
};

struct AxisAttenuation {
    double az_db = 0.0;
    double el_db = 0.0;
};

/// 12 (θ / θ_3dB)^2 per axis with the beam beamwidth; uncapped.
AxisAttenuation ue_beam_attenuation_db(const UeAntenna& a, const OffAxisAngles& off);

/// 12 (θ / θ_3dB)^2 per axis with the element beamwidth; uncapped.
AxisAttenuation ue_element_attenuation_db(const UeAntenna& a, const OffAxisAngles& off);

/// Power radiated toward the FS, in dBm:
/// EIRP - beam_az - beam_el - min(elem_az + elem_el, FTBR), with the beam sum
/// itself floored at FTBR when `beam_cap` is set.
double ue_radiated_dbm(const UeAntenna& a, const OffAxisAngles& off);

} // namespace mmcoex
