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

#include <functional>
#include <queue>
#include <span>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

struct Merge {
    double threshold = 0.0;
    int child_a = 0;
    int child_b = 0;
    int parent = 0;

    bool operator==(const Merge&) const = default;
};

/// Base partition plus the ordered merge list of an ultrametric contour map.
/// Base regions are nodes 0..R-1; merge i creates node R+i.
class RegionHierarchy {
public:
    /// Throws ContractError unless the merges form one binary tree over the
    /// base regions with non-decreasing thresholds.
    RegionHierarchy(LabelMap base, std::vector<Merge> merges, SparseBoundaries base_boundaries);

    const LabelMap& base() const { return base_; }
    const std::vector<Merge>& merges() const { return merges_; }
    const SparseBoundaries& base_boundaries() const { return base_boundaries_; }
    int base_region_count() const { return base_.label_bound(); }
    int width() const { return base_.width(); }
    int height() const { return base_.height(); }

private:
    LabelMap base_;
    std::vector<Merge> merges_;
    SparseBoundaries base_boundaries_;
};

/// Greedy ascending-strength merging over any boundary representation that
/// offers segment_strengths() and erase_segment(). Ties break on (a, b), so
/// the sequence depends only on the strengths. `on_merge(strength, pair,
/// result)` runs after each erase.
template <typename Boundaries, typename OnMerge>
void merge_ascending(Boundaries& boundaries, OnMerge&& on_merge)
{
    using Entry = std::tuple<double, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    std::unordered_map<std::uint64_t, double> live;
    for (const auto& [pair, strength] : boundaries.segment_strengths()) {
        queue.emplace(strength, pair.a, pair.b);
        live.emplace(pair.key(), strength);
    }
    while (!queue.empty()) {
        const auto [strength, a, b] = queue.top();
        queue.pop();
        const RegionPair pair{a, b};
        const auto it = live.find(pair.key());
        if (it == live.end() || it->second != strength)
            continue;
        const EraseResult result = boundaries.erase_segment(pair);
        for (const RegionPair gone : result.removed)
            live.erase(gone.key());
        for (const auto& [changed, s] : result.updated) {
            live.insert_or_assign(changed.key(), s);
            queue.emplace(s, changed.a, changed.b);
        }
        on_merge(strength, pair, result);
    }
}

/// Erases segments in increasing strength until one region is left. Each
/// merge threshold is the running max of the erased strengths.
RegionHierarchy build_ucm(const SparseBoundaries& boundaries);

/// Base partition with every merge of threshold <= t applied, compacted.
LabelMap threshold(const RegionHierarchy& hierarchy, double t);

/// Each base edgel carries the threshold at which its two sides merge.
BoundaryGrid to_ucm_grid(const RegionHierarchy& hierarchy);

/// Brings a boundary grid to another pixel size with nearest-neighbour pixel
/// mapping. A target edgel takes the strongest source edgel crossed between
/// the source pixels of its two sides (0 when both map to one pixel).
BoundaryGrid resample_boundary_grid(const BoundaryGrid& grid, int new_width, int new_height);

/// UCMs resampled to the largest input, averaged per edgel with `weights`,
/// then rebuilt with build_ucm(from_boundary_grid(.)). Empty `weights`
/// means uniform.
RegionHierarchy combine_multiscale(std::span<const RegionHierarchy> hierarchies,
                                   std::span<const double> weights = {});

} // namespace sucm
