// Copyright 2026 The sparseucm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparseucm/raster.hpp"

namespace sucm {

/// Boundary-grid position of an edgel; exactly one coordinate is odd.
struct EdgelCoord {
    int grid_row = 0;
    int grid_col = 1;

    bool is_valid() const { return is_edgel_position(grid_row, grid_col); }
    /// True for the piece between two horizontally adjacent pixels (it runs
    /// vertically in the image).
    bool separates_columns() const { return (grid_col & 1) != 0; }

    auto operator<=>(const EdgelCoord&) const = default;
};

/// Any boundary-grid position; used for junction vertices of polygon chains.
struct GridPoint {
    int grid_row = 0;
    int grid_col = 0;

    auto operator<=>(const GridPoint&) const = default;
};

struct PixelCoord {
    int row = 0;
    int col = 0;

    auto operator<=>(const PixelCoord&) const = default;
};

/// The two pixels an edgel separates, lower index first.
inline std::pair<PixelCoord, PixelCoord> edgel_pixels(EdgelCoord e)
{
    if (e.separates_columns())
        return {{e.grid_row / 2, (e.grid_col - 1) / 2}, {e.grid_row / 2, (e.grid_col + 1) / 2}};
    return {{(e.grid_row - 1) / 2, e.grid_col / 2}, {(e.grid_row + 1) / 2, e.grid_col / 2}};
}

/// The two junction end points of an edgel, lower coordinate first. They may
/// lie one step outside the grid on the image border.
inline std::pair<GridPoint, GridPoint> edgel_endpoints(EdgelCoord e)
{
    if (e.separates_columns())
        return {{e.grid_row - 1, e.grid_col}, {e.grid_row + 1, e.grid_col}};
    return {{e.grid_row, e.grid_col - 1}, {e.grid_row, e.grid_col + 1}};
}

/// Unordered region pair stored as a < b.
struct RegionPair {
    int a = 0;
    int b = 0;

    static RegionPair of(int x, int y) { return x < y ? RegionPair{x, y} : RegionPair{y, x}; }
    std::uint64_t key() const
    {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }

    auto operator<=>(const RegionPair&) const = default;
};

struct BoundarySegment {
    int region_a = 0;
    int region_b = 0;
    double strength = 0.0;
    std::vector<EdgelCoord> edgels;

    RegionPair pair() const { return {region_a, region_b}; }
};

/// Strength of two concatenated segments: the length-weighted mean, written
/// so that equal inputs reproduce their value exactly.
inline double merged_strength(double kept, std::size_t kept_edgels, double absorbed,
                              std::size_t absorbed_edgels)
{
    const double share = static_cast<double>(absorbed_edgels) /
                         static_cast<double>(kept_edgels + absorbed_edgels);
    return kept + (absorbed - kept) * share;
}

/// What one erase did. The survivor keeps the smaller id.
struct EraseResult {
    int survivor = 0;
    int absorbed = 0;
    /// The erased pair first, then every (absorbed, n) pair in increasing n.
    std::vector<RegionPair> removed;
    /// New or changed (survivor, n) segments in increasing n.
    std::vector<std::pair<RegionPair, double>> updated;
};

/// Look-up table from neighbouring region pairs to their boundary strength and
/// edgel coordinates, on top of a base label map whose regions are merged
/// through union-find as boundaries are erased.
class SparseBoundaries {
public:
    /// Walks every 4-adjacent pixel pair once; strengths start at 0.
    /// Throws ContractError if `labels` is not compact.
    static SparseBoundaries from_label_map(const LabelMap& labels);

    /// Assembles a structure from explicit segments, validating every
    /// invariant against `labels`.
    SparseBoundaries(LabelMap labels, std::vector<BoundarySegment> segments);

    int width() const { return base_.width(); }
    int height() const { return base_.height(); }
    int region_count() const { return live_regions_; }
    std::size_t segment_count() const { return segments_.size(); }
    std::size_t edgel_count() const;

    const LabelMap& base_labels() const { return base_; }
    /// Region id currently owning base label `label`.
    int region_of(int label) const;
    /// Current partition, relabeled in increasing region-id order.
    LabelMap labels() const;

    const BoundarySegment* find(RegionPair pair) const;
    /// Throws ContractError for a missing pair.
    const BoundarySegment& segment(RegionPair pair) const;
    /// Sorted by (a, b).
    std::vector<BoundarySegment> segments() const;
    std::vector<std::pair<RegionPair, double>> segment_strengths() const;
    const std::set<int>& neighbors(int region) const;

    void set_strength(RegionPair pair, double value);

    /// Merges the two regions of `pair` into the smaller id. Segments of the
    /// absorbed region are re-keyed to the survivor, or appended to the
    /// survivor's existing segment toward the same neighbour with
    /// merged_strength(). Only incident segments are visited.
    EraseResult erase_segment(RegionPair pair);

    /// Copy with region ids renumbered to 0..R-1 and a fresh base.
    SparseBoundaries compacted() const;

    /// Edgel moves plus look-ups performed by erase_segment since the last
    /// reset.
    std::size_t touched() const { return touched_; }
    void reset_touched() { touched_ = 0; }

    /// Throws ContractError naming the first broken invariant.
    void validate() const;

private:
    SparseBoundaries() = default;
    void link(BoundarySegment segment);

    LabelMap base_{Raster<std::int32_t>::Zero(1, 1)};
    std::vector<int> parent_;
    std::vector<std::set<int>> adjacency_;
    std::unordered_map<std::uint64_t, BoundarySegment> segments_;
    int live_regions_ = 0;
    std::size_t touched_ = 0;
};

/// Sets every junction cell to the max of its incident edgel cells when at
/// least two of them are nonzero, else 0.
void render_junctions(Raster<double>& cells);

/// Edgel cells carry their segment strength; junctions per render_junctions.
BoundaryGrid to_boundary_grid(const SparseBoundaries& boundaries);

/// Regions are 4-connected pixel components not separated by an edgel with
/// strength > 0, numbered in row-major order of first appearance. Each
/// segment takes the max strength over its edgels; active edgels inside a
/// region are dropped.
SparseBoundaries from_boundary_grid(const BoundaryGrid& grid);

} // namespace sucm
