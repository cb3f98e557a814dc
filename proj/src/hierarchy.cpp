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

#include "sparseucm/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sucm {

RegionHierarchy::RegionHierarchy(LabelMap base, std::vector<Merge> merges, SparseBoundaries base_boundaries)
    : base_(std::move(base)), merges_(std::move(merges)), base_boundaries_(std::move(base_boundaries))
{
    if (!base_.is_compact())
        throw ContractError("RegionHierarchy: base labels must be compact");
    if (base_boundaries_.width() != base_.width() || base_boundaries_.height() != base_.height() ||
        base_boundaries_.region_count() != base_.label_bound())
        throw ContractError("RegionHierarchy: base boundaries do not match the base partition");
    const int regions = base_.label_bound();
    if (static_cast<int>(merges_.size()) != regions - 1)
        throw ContractError("RegionHierarchy: expected " + std::to_string(regions - 1) + " merges, got " +
                            std::to_string(merges_.size()));
    std::vector<char> used(static_cast<std::size_t>(2 * regions - 1), 0);
    double previous = 0.0;
    for (std::size_t i = 0; i < merges_.size(); ++i) {
        const Merge& m = merges_[i];
        const int created = regions + static_cast<int>(i);
        if (m.parent != created)
            throw ContractError("RegionHierarchy: merge " + std::to_string(i) + " must create node " +
                                std::to_string(created));
        if (!(m.threshold >= previous))
            throw ContractError("RegionHierarchy: merge thresholds must be non-decreasing and >= 0");
        previous = m.threshold;
        for (const int child : {m.child_a, m.child_b}) {
            if (child < 0 || child >= created || used[static_cast<std::size_t>(child)])
                throw ContractError("RegionHierarchy: invalid or reused child in merge " + std::to_string(i));
            used[static_cast<std::size_t>(child)] = 1;
        }
        if (m.child_a == m.child_b)
            throw ContractError("RegionHierarchy: merge joins a node with itself");
    }
}

RegionHierarchy build_ucm(const SparseBoundaries& boundaries)
{
    SparseBoundaries work = boundaries.compacted();
    SparseBoundaries snapshot = work;
    LabelMap base = work.base_labels();
    const int regions = base.label_bound();

    std::vector<int> node_of(static_cast<std::size_t>(regions));
    std::iota(node_of.begin(), node_of.end(), 0);
    std::vector<Merge> merges;
    merges.reserve(static_cast<std::size_t>(regions > 0 ? regions - 1 : 0));
    double running = 0.0;
    merge_ascending(work, [&](double strength, RegionPair pair, const EraseResult& result) {
        running = std::max(running, strength);
        Merge m;
        m.threshold = running;
        m.child_a = node_of[static_cast<std::size_t>(pair.a)];
        m.child_b = node_of[static_cast<std::size_t>(pair.b)];
        m.parent = regions + static_cast<int>(merges.size());
        node_of[static_cast<std::size_t>(result.survivor)] = m.parent;
        merges.push_back(m);
    });
    return RegionHierarchy(std::move(base), std::move(merges), std::move(snapshot));
}

LabelMap threshold(const RegionHierarchy& hierarchy, double t)
{
    const int regions = hierarchy.base_region_count();
    std::vector<int> parent(static_cast<std::size_t>(regions));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    // Any base region inside a node stands for it.
    std::vector<int> representative(static_cast<std::size_t>(2 * regions - 1));
    std::iota(representative.begin(), representative.begin() + regions, 0);
    for (const Merge& m : hierarchy.merges()) {
        const int ra = representative[static_cast<std::size_t>(m.child_a)];
        representative[static_cast<std::size_t>(m.parent)] = ra;
        if (m.threshold > t)
            continue;
        const int x = find(ra);
        const int y = find(representative[static_cast<std::size_t>(m.child_b)]);
        if (x != y)
            parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
    }
    const auto& base = hierarchy.base().labels();
    Raster<std::int32_t> out(base.rows(), base.cols());
    for (Eigen::Index i = 0; i < base.size(); ++i)
        out.data()[i] = find(base.data()[i]);
    return compact_labels(LabelMap(std::move(out)));
}

BoundaryGrid to_ucm_grid(const RegionHierarchy& hierarchy)
{
    const int regions = hierarchy.base_region_count();
    const std::size_t nodes = static_cast<std::size_t>(2 * regions - 1);
    std::vector<int> up(nodes, -1);
    std::vector<double> level(nodes, 0.0);
    for (const Merge& m : hierarchy.merges()) {
        up[static_cast<std::size_t>(m.child_a)] = m.parent;
        up[static_cast<std::size_t>(m.child_b)] = m.parent;
        level[static_cast<std::size_t>(m.parent)] = m.threshold;
    }
    // Parents always have larger ids than children.
    std::vector<int> depth(nodes, 0);
    for (std::size_t i = nodes; i-- > 0;)
        if (up[i] >= 0)
            depth[i] = depth[static_cast<std::size_t>(up[i])] + 1;

    auto meet = [&](int x, int y) {
        while (x != y) {
            if (depth[static_cast<std::size_t>(x)] < depth[static_cast<std::size_t>(y)])
                std::swap(x, y);
            x = up[static_cast<std::size_t>(x)];
        }
        return x;
    };

    const SparseBoundaries& sb = hierarchy.base_boundaries();
    Raster<double> cells = Raster<double>::Zero(2 * sb.height() - 1, 2 * sb.width() - 1);
    for (const auto& [pair, strength] : sb.segment_strengths()) {
        const double t = level[static_cast<std::size_t>(meet(pair.a, pair.b))];
        for (const EdgelCoord e : sb.segment(pair).edgels)
            cells(e.grid_row, e.grid_col) = t;
    }
    render_junctions(cells);
    return BoundaryGrid(std::move(cells));
}

BoundaryGrid resample_boundary_grid(const BoundaryGrid& grid, int new_width, int new_height)
{
    if (new_width < 1 || new_height < 1)
        throw ContractError("resample_boundary_grid: dimensions must be >= 1");
    const int w = grid.pixel_width();
    const int h = grid.pixel_height();
    if (new_width == w && new_height == h)
        return grid;

    auto source_row = [&](int r) { return static_cast<int>(detail::nearest_source(r, new_height, h)); };
    auto source_col = [&](int c) { return static_cast<int>(detail::nearest_source(c, new_width, w)); };

    Raster<double> cells = Raster<double>::Zero(2 * new_height - 1, 2 * new_width - 1);
    for (int gr = 0; gr < cells.rows(); ++gr) {
        for (int gc = (gr & 1) ? 0 : 1; gc < cells.cols(); gc += 2) {
            const auto [p, q] = edgel_pixels({gr, gc});
            double strongest = 0.0;
            if (p.row == q.row) {
                const int sr = source_row(p.row);
                for (int sc = source_col(p.col); sc < source_col(q.col); ++sc)
                    strongest = std::max(strongest, grid(2 * sr, 2 * sc + 1));
            } else {
                const int sc = source_col(p.col);
                for (int sr = source_row(p.row); sr < source_row(q.row); ++sr)
                    strongest = std::max(strongest, grid(2 * sr + 1, 2 * sc));
            }
            cells(gr, gc) = strongest;
        }
    }
    render_junctions(cells);
    return BoundaryGrid(std::move(cells));
}

RegionHierarchy combine_multiscale(std::span<const RegionHierarchy> hierarchies, std::span<const double> weights)
{
    if (hierarchies.empty())
        throw ContractError("combine_multiscale: need at least one hierarchy");
    std::vector<double> w(weights.begin(), weights.end());
    if (w.empty())
        w.assign(hierarchies.size(), 1.0);
    if (w.size() != hierarchies.size())
        throw ContractError("combine_multiscale: " + std::to_string(w.size()) + " weights for " +
                            std::to_string(hierarchies.size()) + " hierarchies");
    for (const double x : w)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ContractError("combine_multiscale: weights must be finite and non-negative");
    if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; }))
        throw ContractError("combine_multiscale: weights are all zero");

    std::size_t finest = 0;
    for (std::size_t i = 1; i < hierarchies.size(); ++i)
        if (static_cast<long>(hierarchies[i].width()) * hierarchies[i].height() >
            static_cast<long>(hierarchies[finest].width()) * hierarchies[finest].height())
            finest = i;
    const int width = hierarchies[finest].width();
    const int height = hierarchies[finest].height();

    // Running weighted mean: identical inputs give back their value exactly.
    Raster<double> mean = Raster<double>::Zero(2 * height - 1, 2 * width - 1);
    double total = 0.0;
    for (std::size_t i = 0; i < hierarchies.size(); ++i) {
        if (w[i] == 0.0)
            continue;
        const BoundaryGrid ucm = resample_boundary_grid(to_ucm_grid(hierarchies[i]), width, height);
        total += w[i];
        const double share = w[i] / total;
        mean += (ucm.cells() - mean) * share;
    }
    render_junctions(mean);
    return build_ucm(from_boundary_grid(BoundaryGrid(std::move(mean))));
}

} // namespace sucm
