// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmcoex/error.hpp"

namespace mmcoex {
namespace {

double cross(const PlanarPoint& o, const PlanarPoint& a, const PlanarPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dot(double ax, double ay, double bx, double by) { return ax * bx + ay * by; }

// Relative tolerance for orientation tests, scaled by the operand lengths.
constexpr double kRelEps = 1e-12;

bool on_segment(const PlanarPoint& p, const PlanarPoint& a, const PlanarPoint& b) {
    const double len = distance(a, b);
    const double c = cross(a, b, p);
    if (std::abs(c) > kRelEps * std::max(1.0, len * std::max(len, distance(a, p)))) {
        return false;
    }
    const double tol = kRelEps * std::max(1.0, len);
    return p.x >= std::min(a.x, b.x) - tol && p.x <= std::max(a.x, b.x) + tol &&
           p.y >= std::min(a.y, b.y) - tol && p.y <= std::max(a.y, b.y) + tol;
}

// Proper or touching intersection of closed segments p1p2 and q1q2.
bool segments_intersect(const PlanarPoint& p1, const PlanarPoint& p2,
                        const PlanarPoint& q1, const PlanarPoint& q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    return on_segment(p1, q1, q2) || on_segment(p2, q1, q2) ||
           on_segment(q1, p1, p2) || on_segment(q2, p1, p2);
}

std::vector<PlanarPoint> normalize_ring(std::vector<PlanarPoint> v) {
    std::vector<PlanarPoint> out;
    out.reserve(v.size());
    for (const auto& p : v) {
        if (out.empty() || !(out.back() == p)) {
            out.push_back(p);
        }
    }
    while (out.size() > 1 && out.front() == out.back()) {
        out.pop_back();
    }
    return out;
}

} // namespace

void validate(const GeoPoint& p) {
    if (!std::isfinite(p.longitude) || !std::isfinite(p.latitude) ||
        p.longitude < -180.0 || p.longitude > 180.0 || p.latitude < -90.0 ||
        p.latitude > 90.0) {
        std::ostringstream os;
        os << "coordinate out of range: (" << p.longitude << ", " << p.latitude << ")";
        throw ConfigError(os.str());
    }
}

PlanarPoint project(const GeoPoint& p, const GeoPoint& origin) {
    validate(p);
    validate(origin);
    const double dlon = p.longitude - origin.longitude;
    const double dlat = p.latitude - origin.latitude;
    if (std::abs(dlon) > kMaxProjectionOffsetDeg || std::abs(dlat) > kMaxProjectionOffsetDeg) {
        std::ostringstream os;
        os << "point (" << p.longitude << ", " << p.latitude
           << ") is more than 1 degree from the scenario origin";
        throw ConfigError(os.str());
    }
    return {kEarthRadiusM * deg_to_rad(dlon) * std::cos(deg_to_rad(origin.latitude)),
            kEarthRadiusM * deg_to_rad(dlat)};
}

GeoPoint unproject(const PlanarPoint& p, const GeoPoint& origin) {
    return {origin.longitude +
                rad_to_deg(p.x / (kEarthRadiusM * std::cos(deg_to_rad(origin.latitude)))),
            origin.latitude + rad_to_deg(p.y / kEarthRadiusM)};
}

double distance(const PlanarPoint& a, const PlanarPoint& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

Box bounding_box(std::span<const PlanarPoint> pts) {
    Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : pts) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

double signed_area(std::span<const PlanarPoint> ring) {
    double twice = 0.0;
    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
        const auto& p = ring[i];
        const auto& q = ring[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    return 0.5 * twice;
}

bool is_simple_polygon(std::span<const PlanarPoint> ring) {
    const std::size_t n = ring.size();
    if (n < 3) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a1 = ring[i];
        const auto& a2 = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const auto& b1 = ring[j];
            const auto& b2 = ring[(j + 1) % n];
            if (adjacent) {
                // Adjacent edges may only share their common vertex; a
                // fold-back (collinear overlap) is a self-intersection.
                const PlanarPoint& shared = (j == i + 1) ? a2 : a1;
                const PlanarPoint& other_a = (j == i + 1) ? a1 : a2;
                const PlanarPoint& other_b = (j == i + 1) ? b2 : b1;
                if (on_segment(other_b, a1, a2) && !(other_b == shared)) {
                    return false;
                }
                if (on_segment(other_a, b1, b2) && !(other_a == shared)) {
                    return false;
                }
                continue;
            }
            if (segments_intersect(a1, a2, b1, b2)) {
                return false;
            }
        }
    }
    return true;
}

bool point_in_polygon(const PlanarPoint& p, std::span<const PlanarPoint> ring) {
    const std::size_t n = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = ring[i];
        const auto& b = ring[j];
        if (on_segment(p, a, b)) {
            return true;
        }
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_at) {
                inside = !inside;
            }
        }
    }
    return inside;
}

Footprint::Footprint(std::vector<PlanarPoint> vertices, double height_m)
    : vertices_(normalize_ring(std::move(vertices))), height_m_(height_m) {
    if (!std::isfinite(height_m_) || height_m_ <= 0.0) {
        throw ConfigError("footprint height must be positive");
    }
    if (vertices_.size() < 3) {
        throw ConfigError("footprint needs at least 3 distinct vertices");
    }
    for (const auto& v : vertices_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw ConfigError("footprint vertex is not finite");
        }
    }
    if (signed_area(vertices_) == 0.0) {
        throw ConfigError("footprint has zero area");
    }
    if (!is_simple_polygon(vertices_)) {
        throw ConfigError("footprint polygon self-intersects");
    }
    bounds_ = bounding_box(vertices_);
}

bool Footprint::contains(const PlanarPoint& p) const {
    return bounds_.contains(p) && point_in_polygon(p, vertices_);
}

SegmentHit segment_intersects_footprint(const PlanarPoint& a, const PlanarPoint& b,
                                        const Footprint& f) {
    if (f.contains(a)) {
        return {true, 0.0};
    }
    const double rx = b.x - a.x;
    const double ry = b.y - a.y;
    const double len2 = rx * rx + ry * ry;
    const double len = std::sqrt(len2);

    double best_t = std::numeric_limits<double>::infinity();
    const auto& v = f.vertices();
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % n];
        if (!segments_intersect(a, b, p, q)) {
            continue;
        }
        const double sx = q.x - p.x;
        const double sy = q.y - p.y;
        const double denom = rx * sy - ry * sx;
        const double edge_len = std::hypot(sx, sy);
        if (std::abs(denom) > kRelEps * len * edge_len) {
            const double t = ((p.x - a.x) * sy - (p.y - a.y) * sx) / denom;
            best_t = std::min(best_t, std::clamp(t, 0.0, 1.0));
        } else {
            // Collinear overlap: nearest overlap point to a.
            const double tp = dot(p.x - a.x, p.y - a.y, rx, ry) / len2;
            const double tq = dot(q.x - a.x, q.y - a.y, rx, ry) / len2;
            best_t = std::min(best_t, std::clamp(std::min(tp, tq), 0.0, 1.0));
        }
    }
    if (!std::isfinite(best_t)) {
        return {};
    }
    return {true, best_t * len};
}

bool footprint_blocks(const BlockageQuery& q, const Footprint& f) {
    const SegmentHit hit = segment_intersects_footprint(q.ue_pos, q.fs_pos, f);
    if (!hit.hit) {
        return false;
    }
    const double d_fs = distance(q.ue_pos, q.fs_pos);
    const double ray_rise = hit.entry_distance_m * (q.fs_height_m - q.ue_height_m) / d_fs;
    return ray_rise + q.ue_height_m <= f.height_m();
}

double fold_angle_deg(double diff_deg) {
    const double m = std::abs(std::fmod(diff_deg, 360.0));
    return std::min(m, 360.0 - m);
}

double bearing_deg(const PlanarPoint& from, const PlanarPoint& to) {
    double deg = rad_to_deg(std::atan2(to.y - from.y, to.x - from.x));
    if (deg < 0.0) {
        deg += 360.0;
    }
    return deg >= 360.0 ? 0.0 : deg;
}

OffAxisAngles fs_off_axis(const PlanarPoint& fs_tx, const PlanarPoint& fs_rx,
                          double fs_rx_height_m, double tilt_deg,
                          const PlanarPoint& ue, double ue_height_m) {
    const double bx = fs_rx.x - fs_tx.x;
    const double by = fs_rx.y - fs_tx.y;
    const double ix = fs_rx.x - ue.x;
    const double iy = fs_rx.y - ue.y;
    const double beam_len = std::hypot(bx, by);
    const double d_fs = std::hypot(ix, iy);
    if (beam_len == 0.0) {
        throw ConfigError("malformed link: transmitter and receiver coincide");
    }
    if (d_fs == 0.0) {
        throw ConfigError("UE coincides with the FS receiver");
    }
    const double c = std::clamp(dot(bx, by, ix, iy) / (beam_len * d_fs), -1.0, 1.0);
    return {rad_to_deg(std::acos(c)),
            tilt_deg + rad_to_deg(std::atan((fs_rx_height_m - ue_height_m) / d_fs))};
}

OffAxisAngles ue_off_axis(double ue_beam_azimuth_deg, double ue_beam_elevation_deg,
                          double azimuth_to_fs_deg, double elevation_to_fs_deg) {
    return {fold_angle_deg(ue_beam_azimuth_deg - azimuth_to_fs_deg),
            fold_angle_deg(elevation_to_fs_deg - ue_beam_elevation_deg)};
}

} // namespace mmcoex
