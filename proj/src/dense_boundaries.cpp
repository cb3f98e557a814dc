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

#include "sparseucm/dense_boundaries.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace sucm {

namespace {

struct Side {
    std::size_t count = 0;
    double strength = 0.0;
};

} // namespace

DenseBoundaries::DenseBoundaries(const SparseBoundaries& boundaries)
    : labels_(boundaries.height(), boundaries.width()),
      cells_(Raster<double>::Zero(2 * boundaries.height() - 1, 2 * boundaries.width() - 1))
{
    // Keep live region ids (not renumbered) so erase calls match the sparse side.
    for (Eigen::Index r = 0; r < labels_.rows(); ++r)
        for (Eigen::Index c = 0; c < labels_.cols(); ++c)
            labels_(r, c) = boundaries.region_of(boundaries.base_labels()(static_cast<int>(r), static_cast<int>(c)));
    for (const auto& s : boundaries.segments())
        for (const EdgelCoord e : s.edgels)
            cells_(e.grid_row, e.grid_col) = s.strength;
}

std::vector<std::pair<RegionPair, double>> DenseBoundaries::segment_strengths() const
{
    std::map<RegionPair, double> found;
    for (int gr = 0; gr < cells_.rows(); ++gr) {
        for (int gc = 0; gc < cells_.cols(); ++gc) {
            if (!is_edgel_position(gr, gc))
                continue;
            const auto [p, q] = edgel_pixels({gr, gc});
            const int lp = labels_(p.row, p.col);
            const int lq = labels_(q.row, q.col);
            if (lp != lq)
                found.emplace(RegionPair::of(lp, lq), cells_(gr, gc));
        }
    }
    return {found.begin(), found.end()};
}

EraseResult DenseBoundaries::erase_segment(RegionPair pair)
{
    const int keep = pair.a;
    const int gone = pair.b;
    std::map<int, Side> kept_sides;
    std::map<int, Side> gone_sides;
    bool exists = false;

    // Sweep 1: discover the erased boundary and every boundary of both regions.
    for (int gr = 0; gr < cells_.rows(); ++gr) {
        for (int gc = 0; gc < cells_.cols(); ++gc) {
            ++touched_;
            if (!is_edgel_position(gr, gc))
                continue;
            const auto [p, q] = edgel_pixels({gr, gc});
            const int lp = labels_(p.row, p.col);
            const int lq = labels_(q.row, q.col);
            if (lp == lq)
                continue;
            const RegionPair here = RegionPair::of(lp, lq);
            if (here == pair) {
                exists = true;
            } else if (lp == gone || lq == gone) {
                Side& side = gone_sides[lp == gone ? lq : lp];
                ++side.count;
                side.strength = cells_(gr, gc);
            } else if (lp == keep || lq == keep) {
                Side& side = kept_sides[lp == keep ? lq : lp];
                ++side.count;
                side.strength = cells_(gr, gc);
            }
        }
    }
    if (!exists)
        throw ContractError("erase_segment: no boundary segment for pair {" + std::to_string(pair.a) +
                            "," + std::to_string(pair.b) + "}");

    EraseResult result;
    result.survivor = keep;
    result.absorbed = gone;
    result.removed.push_back(pair);
    std::map<int, double> rewritten;
    for (const auto& [n, side] : gone_sides) {
        result.removed.push_back(RegionPair::of(gone, n));
        double strength = side.strength;
        if (const auto k = kept_sides.find(n); k != kept_sides.end())
            strength = merged_strength(k->second.strength, k->second.count, side.strength, side.count);
        rewritten.emplace(n, strength);
        result.updated.emplace_back(RegionPair::of(keep, n), strength);
    }

    // Sweep 2: relabel pixels.
    for (Eigen::Index i = 0; i < labels_.size(); ++i) {
        ++touched_;
        if (labels_.data()[i] == gone)
            labels_.data()[i] = keep;
    }

    // Sweep 3: re-render the grid for the merged region.
    for (int gr = 0; gr < cells_.rows(); ++gr) {
        for (int gc = 0; gc < cells_.cols(); ++gc) {
            ++touched_;
            if (!is_edgel_position(gr, gc))
                continue;
            const auto [p, q] = edgel_pixels({gr, gc});
            const int lp = labels_(p.row, p.col);
            const int lq = labels_(q.row, q.col);
            if (lp == lq) {
                cells_(gr, gc) = 0.0;
                continue;
            }
            if (lp != keep && lq != keep)
                continue;
            if (const auto it = rewritten.find(lp == keep ? lq : lp); it != rewritten.end())
                cells_(gr, gc) = it->second;
        }
    }
    return result;
}

} // namespace sucm
