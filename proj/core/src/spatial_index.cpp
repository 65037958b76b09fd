// SPDX-License-Identifier: Apache-2.0
#include "mmcoex/spatial_index.hpp"

#include <algorithm>
#include <cmath>

#include "mmcoex/error.hpp"

namespace mmcoex {
namespace {

// Liang-Barsky clip of a→b against the box; false when disjoint.
bool clip_segment(const Box& box, PlanarPoint& a, PlanarPoint& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    double t0 = 0.0;
    double t1 = 1.0;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - box.min_x, box.max_x - a.x, a.y - box.min_y, box.max_y - a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) {
                return false;
            }
            continue;
        }
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
            t0 = std::max(t0, r);
        } else {
            t1 = std::min(t1, r);
        }
        if (t0 > t1) {
            return false;
        }
    }
    const PlanarPoint a0 = a;
    a = {a0.x + t0 * dx, a0.y + t0 * dy};
    b = {a0.x + t1 * dx, a0.y + t1 * dy};
    return true;
}

} // namespace

BuildingIndex::BuildingIndex(std::vector<Footprint> footprints, double cell_size_m)
    : footprints_(std::move(footprints)), cell_size_(cell_size_m) {
    if (!(cell_size_ > 0.0)) {
        throw ConfigError("spatial index cell size must be positive");
    }
    if (footprints_.empty()) {
        return;
    }
    extent_ = footprints_.front().bounds();
    for (const auto& f : footprints_) {
        const Box& b = f.bounds();
        extent_.min_x = std::min(extent_.min_x, b.min_x);
        extent_.min_y = std::min(extent_.min_y, b.min_y);
        extent_.max_x = std::max(extent_.max_x, b.max_x);
        extent_.max_y = std::max(extent_.max_y, b.max_y);
    }
    const double span = std::max(extent_.max_x - extent_.min_x, extent_.max_y - extent_.min_y);
    cell_size_ = std::max(cell_size_, span / static_cast<double>(kMaxCellsPerAxis));
    nx_ = static_cast<std::size_t>(std::floor((extent_.max_x - extent_.min_x) / cell_size_)) + 1;
    ny_ = static_cast<std::size_t>(std::floor((extent_.max_y - extent_.min_y) / cell_size_)) + 1;
    cells_.resize(nx_ * ny_);

    for (std::size_t id = 0; id < footprints_.size(); ++id) {
        const Box& b = footprints_[id].bounds();
        for (std::size_t cy = cell_y(b.min_y), ey = cell_y(b.max_y); cy <= ey; ++cy) {
            for (std::size_t cx = cell_x(b.min_x), ex = cell_x(b.max_x); cx <= ex; ++cx) {
                cells_[cy * nx_ + cx].push_back(static_cast<std::uint32_t>(id));
            }
        }
    }
}

std::size_t BuildingIndex::cell_x(double x) const {
    const double c = std::floor((x - extent_.min_x) / cell_size_);
    return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(nx_ - 1)));
}

std::size_t BuildingIndex::cell_y(double y) const {
    const double c = std::floor((y - extent_.min_y) / cell_size_);
    return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(ny_ - 1)));
}

std::vector<std::uint32_t> BuildingIndex::segment_candidates(const PlanarPoint& a,
                                                             const PlanarPoint& b) const {
    std::vector<std::uint32_t> out;
    if (footprints_.empty()) {
        return out;
    }
    PlanarPoint p0 = a;
    PlanarPoint p1 = b;
    if (!clip_segment(extent_, p0, p1)) {
        return out;
    }
    if (p0.x > p1.x) {
        std::swap(p0, p1);
    }
    const double dx = p1.x - p0.x;
    const double dy = p1.y - p0.y;
    // Pad each column's y-interval so rounding at cell borders never drops a
    // cell the segment grazes.
    const double pad = 1e-9 * cell_size_;

    for (std::size_t cx = cell_x(p0.x), ex = cell_x(p1.x); cx <= ex; ++cx) {
        double ya = p0.y;
        double yb = p1.y;
        if (dx > 0.0) {
            const double col_lo = extent_.min_x + static_cast<double>(cx) * cell_size_;
            const double xa = std::max(p0.x, col_lo);
            const double xb = std::min(p1.x, col_lo + cell_size_);
            ya = p0.y + dy * (xa - p0.x) / dx;
            yb = p0.y + dy * (xb - p0.x) / dx;
        }
        const double lo = std::min(ya, yb) - pad;
        const double hi = std::max(ya, yb) + pad;
        for (std::size_t cy = cell_y(lo), ey = cell_y(hi); cy <= ey; ++cy) {
            const auto& bucket = cells_[cy * nx_ + cx];
            out.insert(out.end(), bucket.begin(), bucket.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool BuildingIndex::covers(const PlanarPoint& p) const {
    if (footprints_.empty() || !extent_.contains(p)) {
        return false;
    }
    for (std::uint32_t id : cells_[cell_y(p.y) * nx_ + cell_x(p.x)]) {
        if (footprints_[id].contains(p)) {
            return true;
        }
    }
    return false;
}

BlockageResult is_blocked(const BlockageQuery& q, const BuildingIndex& buildings) {
    const Box seg{std::min(q.ue_pos.x, q.fs_pos.x), std::min(q.ue_pos.y, q.fs_pos.y),
                  std::max(q.ue_pos.x, q.fs_pos.x), std::max(q.ue_pos.y, q.fs_pos.y)};
    for (std::uint32_t id : buildings.segment_candidates(q.ue_pos, q.fs_pos)) {
        const Footprint& f = buildings.footprints()[id];
        if (f.bounds().intersects(seg) && footprint_blocks(q, f)) {
            return {true, id};
        }
    }
    return {};
}

} // namespace mmcoex
