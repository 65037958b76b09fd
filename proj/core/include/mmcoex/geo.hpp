// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace mmcoex {

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Largest |Δlon| or |Δlat| (degrees) accepted by the planar projection.
inline constexpr double kMaxProjectionOffsetDeg = 1.0;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// WGS84 coordinate in degrees.
struct GeoPoint {
    double longitude = 0.0;
    double latitude = 0.0;

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Local east/north coordinates in meters relative to the scenario origin.
struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// Throws ConfigError when the coordinate is non-finite or out of range.
void validate(const GeoPoint& p);

/// Equirectangular projection about `origin`. Throws ConfigError when `p`
/// lies more than one degree (in either axis) away from the origin.
PlanarPoint project(const GeoPoint& p, const GeoPoint& origin);

/// Inverse of project().
GeoPoint unproject(const PlanarPoint& p, const GeoPoint& origin);

double distance(const PlanarPoint& a, const PlanarPoint& b);

/// Axis-aligned bounding box.
struct Box {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    bool intersects(const Box& o) const {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }
    bool contains(const PlanarPoint& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
};

Box bounding_box(std::span<const PlanarPoint> pts);

/// Signed shoelace area; positive for counter-clockwise rings.
double signed_area(std::span<const PlanarPoint> ring);

/// True if the closed ring has no self-intersections (adjacent edges may
/// only share their common vertex).
bool is_simple_polygon(std::span<const PlanarPoint> ring);

/// True if `p` lies inside the ring or on its boundary.
bool point_in_polygon(const PlanarPoint& p, std::span<const PlanarPoint> ring);

/// A building: simple polygon footprint extruded to a flat roof.
class Footprint {
public:
    /// Validates and normalizes the ring: a duplicated closing vertex and
    /// repeated consecutive vertices are removed. Throws ConfigError for
    /// fewer than three vertices, zero area, self-intersection, or a
    /// non-positive height.
    Footprint(std::vector<PlanarPoint> vertices, double height_m);

    const std::vector<PlanarPoint>& vertices() const { return vertices_; }
    double height_m() const { return height_m_; }
    const Box& bounds() const { return bounds_; }

    bool contains(const PlanarPoint& p) const;

private:
    std::vector<PlanarPoint> vertices_;
    double height_m_;
    Box bounds_;
};

struct SegmentHit {
    bool hit = false;
    /// Distance from the segment start to the nearest boundary contact;
    /// zero when the start lies inside or on the footprint.
    double entry_distance_m = 0.0;
};

/// 2D test of segment a→b against a footprint. Touching the boundary
/// counts as a hit.
SegmentHit segment_intersects_footprint(const PlanarPoint& a, const PlanarPoint& b,
                                        const Footprint& f);

struct BlockageQuery {
    PlanarPoint ue_pos;
    double ue_height_m = 0.0;
    PlanarPoint fs_pos;
    double fs_height_m = 0.0;
};

/// Height-rule check of one footprint against the UE→FS ray: the footprint
/// blocks when the ray height above the UE at the entry point, plus the UE
/// height, does not clear the roof.
bool footprint_blocks(const BlockageQuery& q, const Footprint& f);

/// Angular separations between a beam axis and the interference axis.
/// Elevation is positive when the interference axis lies below a beam
/// pointing at `tilt` (i.e. depression beyond the tilt).
struct OffAxisAngles {
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
};

/// Folds an angle difference in degrees to an unsigned separation in
/// [0, 180].
double fold_angle_deg(double diff_deg);

/// Bearing of `to` as seen from `from`, degrees counter-clockwise from east
/// in [0, 360).
double bearing_deg(const PlanarPoint& from, const PlanarPoint& to);

/// Off-axis angles at a fixed-station receiver. Azimuth is the unsigned
/// angle between the link direction (tx→rx) and the UE→rx direction.
/// Elevation is `tilt_deg + atan((h_rx - h_ue) / d)` with `d` the planar
/// UE-receiver distance; negative tilt points below the horizon.
/// Throws ConfigError when tx == rx or ue == rx.
OffAxisAngles fs_off_axis(const PlanarPoint& fs_tx, const PlanarPoint& fs_rx,
                          double fs_rx_height_m, double tilt_deg,
                          const PlanarPoint& ue, double ue_height_m);

/// Off-axis angles of a UE beam relative to the direction toward the FS,
/// each folded to [0, 180].
OffAxisAngles ue_off_axis(double ue_beam_azimuth_deg, double ue_beam_elevation_deg,
                          double azimuth_to_fs_deg, double elevation_to_fs_deg);

} // namespace mmcoex
