// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmcoex/geo.hpp"

namespace mmcoex {

struct BlockageResult {
    bool blocked = false;
    /// Index (into BuildingIndex::footprints()) of the lowest-numbered
    /// footprint that blocks the ray.
    std::optional<std::size_t> blocking_footprint;
};

/// Uniform-grid bucket index over building footprints. Each footprint is
/// registered in every cell its bounding box overlaps; queries walk only the
/// cells swept by a segment, so the index prunes but never decides.
///
/// Immutable after construction and safe for concurrent readers.
class BuildingIndex {
public:
    static constexpr double kDefaultCellSizeM = 50.0;
    /// Upper bound on cells per axis; the cell size grows for huge extents.
    static constexpr std::size_t kMaxCellsPerAxis = 4096;

    BuildingIndex() = default;
    explicit BuildingIndex(std::vector<Footprint> footprints,
                           double cell_size_m = kDefaultCellSizeM);

    const std::vector<Footprint>& footprints() const { return footprints_; }
    bool empty() const { return footprints_.empty(); }
    double cell_size_m() const { return cell_size_; }

    /// Ascending, de-duplicated ids of footprints registered in any cell the
    /// segment a→b passes through.
    std::vector<std::uint32_t> segment_candidates(const PlanarPoint& a,
                                                  const PlanarPoint& b) const;

    /// True if `p` is inside (or on the boundary of) any footprint.
    bool covers(const PlanarPoint& p) const;

private:
    std::size_t cell_x(double x) const;
    std::size_t cell_y(double y) const;

    std::vector<Footprint> footprints_;
    Box extent_{};
    double cell_size_ = kDefaultCellSizeM;
    std::size_t nx_ = 0;
    std::size_t ny_ = 0;
    std::vector<std::vector<std::uint32_t>> cells_;
};

/// Blockage of the UE→FS ray by any indexed building.
BlockageResult is_blocked(const BlockageQuery& q, const BuildingIndex& buildings);

} // namespace mmcoex
