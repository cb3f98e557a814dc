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

#include "sparseucm/sparse_boundaries.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace sucm {

namespace {

std::string pair_name(RegionPair p)
{
    return "{" + std::to_string(p.a) + "," + std::to_string(p.b) + "}";
}

/// Calls f(edgel, first_pixel, second_pixel) for every edgel in row-major
/// grid order.
template <typename F>
void for_each_grid_edgel(int width, int height, F&& f)
{
    const int rows = 2 * height - 1;
    const int cols = 2 * width - 1;
    for (int gr = 0; gr < rows; ++gr) {
        for (int gc = (gr & 1) ? 0 : 1; gc < cols; gc += 2) {
            const EdgelCoord e{gr, gc};
            const auto [p, q] = edgel_pixels(e);
            f(e, p, q);
        }
    }
}

} // namespace

SparseBoundaries SparseBoundaries::from_label_map(const LabelMap& labels)
{
    if (!labels.is_compact())
        throw ContractError("from_label_map: labels must be compact");
    SparseBoundaries sb;
    sb.base_ = labels;
    const int regions = labels.label_bound();
    sb.parent_.resize(static_cast<std::size_t>(regions));
    for (int i = 0; i < regions; ++i)
        sb.parent_[static_cast<std::size_t>(i)] = i;
    sb.adjacency_.resize(static_cast<std::size_t>(regions));
    sb.live_regions_ = regions;

    for_each_grid_edgel(labels.width(), labels.height(), [&](EdgelCoord e, PixelCoord p, PixelCoord q) {
        const int lp = labels(p.row, p.col);
        const int lq = labels(q.row, q.col);
        if (lp == lq)
            return;
        const RegionPair pair = RegionPair::of(lp, lq);
        auto [it, inserted] = sb.segments_.try_emplace(pair.key());
        if (inserted) {
            it->second.region_a = pair.a;
            it->second.region_b = pair.b;
            sb.adjacency_[static_cast<std::size_t>(pair.a)].insert(pair.b);
            sb.adjacency_[static_cast<std::size_t>(pair.b)].insert(pair.a);
        }
        it->second.edgels.push_back(e);
    });
    return sb;
}

SparseBoundaries::SparseBoundaries(LabelMap labels, std::vector<BoundarySegment> segments)
    : base_(std::move(labels))
{
    if (!base_.is_compact())
        throw ContractError("SparseBoundaries: labels must be compact");
    const int regions = base_.label_bound();
    parent_.resize(static_cast<std::size_t>(regions));
    for (int i = 0; i < regions; ++i)
        parent_[static_cast<std::size_t>(i)] = i;
    adjacency_.resize(static_cast<std::size_t>(regions));
    live_regions_ = regions;
    for (auto& s : segments) {
        if (s.region_a >= s.region_b)
            throw ContractError("SparseBoundaries: segment requires region_a < region_b");
        if (s.region_a < 0 || s.region_b >= regions)
            throw ContractError("SparseBoundaries: segment region out of range");
        if (segments_.contains(s.pair().key()))
            throw ContractError("SparseBoundaries: duplicate segment " + pair_name(s.pair()));
        link(std::move(s));
    }
    validate();
}

void SparseBoundaries::link(BoundarySegment segment)
{
    const RegionPair pair = segment.pair();
    adjacency_[static_cast<std::size_t>(pair.a)].insert(pair.b);
    adjacency_[static_cast<std::size_t>(pair.b)].insert(pair.a);
    segments_.insert_or_assign(pair.key(), std::move(segment));
}

std::size_t SparseBoundaries::edgel_count() const
{
    std::size_t n = 0;
    for (const auto& [key, s] : segments_)
        n += s.edgels.size();
    return n;
}

int SparseBoundaries::region_of(int label) const
{
    int r = label;
    while (parent_[static_cast<std::size_t>(r)] != r)
        r = parent_[static_cast<std::size_t>(r)];
    return r;
}

LabelMap SparseBoundaries::labels() const
{
    std::vector<int> root(parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i)
        root[i] = region_of(static_cast<int>(i));
    Raster<std::int32_t> out(base_.height(), base_.width());
    const auto& base = base_.labels();
    for (Eigen::Index i = 0; i < base.size(); ++i)
        out.data()[i] = root[static_cast<std::size_t>(base.data()[i])];
    return compact_labels(LabelMap(std::move(out)));
}

const BoundarySegment* SparseBoundaries::find(RegionPair pair) const
{
    const auto it = segments_.find(pair.key());
    return it == segments_.end() ? nullptr : &it->second;
}

const BoundarySegment& SparseBoundaries::segment(RegionPair pair) const
{
    const BoundarySegment* s = find(pair);
    if (!s)
        throw ContractError("no boundary segment for pair " + pair_name(pair));
    return *s;
}

std::vector<BoundarySegment> SparseBoundaries::segments() const
{
    std::vector<BoundarySegment> out;
    out.reserve(segments_.size());
    for (const auto& [key, s] : segments_)
        out.push_back(s);
    std::sort(out.begin(), out.end(),
              [](const BoundarySegment& x, const BoundarySegment& y) { return x.pair() < y.pair(); });
    return out;
}

std::vector<std::pair<RegionPair, double>> SparseBoundaries::segment_strengths() const
{
    std::vector<std::pair<RegionPair, double>> out;
    out.reserve(segments_.size());
    for (const auto& [key, s] : segments_)
        out.emplace_back(s.pair(), s.strength);
    std::sort(out.begin(), out.end());
    return out;
}

const std::set<int>& SparseBoundaries::neighbors(int region) const
{
    if (region < 0 || static_cast<std::size_t>(region) >= adjacency_.size())
        throw ContractError("neighbors: region out of range");
    return adjacency_[static_cast<std::size_t>(region)];
}

void SparseBoundaries::set_strength(RegionPair pair, double value)
{
    if (!(value >= 0.0))
        throw ContractError("set_strength: strength must be >= 0");
    const auto it = segments_.find(pair.key());
    if (it == segments_.end())
        throw ContractError("set_strength: no boundary segment for pair " + pair_name(pair));
    it->second.strength = value;
}

EraseResult SparseBoundaries::erase_segment(RegionPair pair)
{
    const auto it = segments_.find(pair.key());
    if (it == segments_.end())
        throw ContractError("erase_segment: no boundary segment for pair " + pair_name(pair));
    ++touched_;

    EraseResult result;
    result.survivor = pair.a;
    result.absorbed = pair.b;
    result.removed.push_back(pair);
    segments_.erase(it);

    const int keep = pair.a;
    const int gone = pair.b;
    auto& keep_adj = adjacency_[static_cast<std::size_t>(keep)];
    auto& gone_adj = adjacency_[static_cast<std::size_t>(gone)];
    keep_adj.erase(gone);
    gone_adj.erase(keep);

    for (const int n : gone_adj) {
        const RegionPair old_pair = RegionPair::of(gone, n);
        auto node = segments_.extract(old_pair.key());
        BoundarySegment& moved = node.mapped();
        touched_ += moved.edgels.size();
        result.removed.push_back(old_pair);

        auto& n_adj = adjacency_[static_cast<std::size_t>(n)];
        n_adj.erase(gone);

        const RegionPair new_pair = RegionPair::of(keep, n);
        const auto existing = segments_.find(new_pair.key());
        double strength = moved.strength;
        if (existing != segments_.end()) {
            BoundarySegment& target = existing->second;
            strength = merged_strength(target.strength, target.edgels.size(), moved.strength,
                                       moved.edgels.size());
            target.strength = strength;
            target.edgels.insert(target.edgels.end(), moved.edgels.begin(), moved.edgels.end());
        } else {
            moved.region_a = new_pair.a;
            moved.region_b = new_pair.b;
            segments_.emplace(new_pair.key(), std::move(moved));
            keep_adj.insert(n);
            n_adj.insert(keep);
        }
        result.updated.emplace_back(new_pair, strength);
    }
    gone_adj.clear();
    parent_[static_cast<std::size_t>(gone)] = keep;
    --live_regions_;
    return result;
}

SparseBoundaries SparseBoundaries::compacted() const
{
    // Live region ids sorted ascending map onto 0..R-1, matching labels().
    std::vector<int> live;
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] == static_cast<int>(i))
            live.push_back(static_cast<int>(i));
    std::vector<int> remap(parent_.size(), -1);
    for (std::size_t i = 0; i < live.size(); ++i)
        remap[static_cast<std::size_t>(live[i])] = static_cast<int>(i);

    SparseBoundaries out;
    out.base_ = labels();
    out.parent_.resize(live.size());
    for (std::size_t i = 0; i < live.size(); ++i)
        out.parent_[i] = static_cast<int>(i);
    out.adjacency_.resize(live.size());
    out.live_regions_ = static_cast<int>(live.size());
    for (const auto& [key, s] : segments_) {
        BoundarySegment copy = s;
        const RegionPair p = RegionPair::of(remap[static_cast<std::size_t>(s.region_a)],
                                            remap[static_cast<std::size_t>(s.region_b)]);
        copy.region_a = p.a;
        copy.region_b = p.b;
        out.link(std::move(copy));
    }
    return out;
}

void SparseBoundaries::validate() const
{
    const int w = width();
    const int h = height();
    std::vector<std::int32_t> root(parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i)
        root[i] = region_of(static_cast<int>(i));
    auto region_at = [&](PixelCoord p) { return root[static_cast<std::size_t>(base_(p.row, p.col))]; };

    Raster<std::uint8_t> owned = Raster<std::uint8_t>::Zero(2 * h - 1, 2 * w - 1);
    std::size_t owned_count = 0;
    for (const auto& [key, s] : segments_) {
        const RegionPair pair = s.pair();
        if (s.edgels.empty())
            throw ContractError("segment " + pair_name(pair) + " has no edgels");
        if (!(s.strength >= 0.0))
            throw ContractError("segment " + pair_name(pair) + " has negative strength");
        if (!adjacency_[static_cast<std::size_t>(pair.a)].contains(pair.b) ||
            !adjacency_[static_cast<std::size_t>(pair.b)].contains(pair.a))
            throw ContractError("segment " + pair_name(pair) + " missing from adjacency");
        for (const EdgelCoord e : s.edgels) {
            if (!e.is_valid() || e.grid_row < 0 || e.grid_col < 0 || e.grid_row >= owned.rows() ||
                e.grid_col >= owned.cols())
                throw ContractError("segment " + pair_name(pair) + " has an invalid edgel");
            auto& cell = owned(e.grid_row, e.grid_col);
            if (cell)
                throw ContractError("edgel listed twice");
            cell = 1;
            ++owned_count;
            const auto [p, q] = edgel_pixels(e);
            if (RegionPair::of(region_at(p), region_at(q)) != pair)
                throw ContractError("edgel does not separate segment " + pair_name(pair));
        }
    }
    std::size_t discontinuities = 0;
    for_each_grid_edgel(w, h, [&](EdgelCoord, PixelCoord p, PixelCoord q) {
        if (region_at(p) != region_at(q))
            ++discontinuities;
    });
    if (discontinuities != owned_count)
        throw ContractError("segments do not cover every label discontinuity");
    std::size_t adjacency_entries = 0;
    for (const auto& a : adjacency_)
        adjacency_entries += a.size();
    if (adjacency_entries != 2 * segments_.size())
        throw ContractError("adjacency lists out of sync with segments");
}

void render_junctions(Raster<double>& cells)
{
    for (Eigen::Index r = 1; r < cells.rows(); r += 2) {
        for (Eigen::Index c = 1; c < cells.cols(); c += 2) {
            const double incident[] = {cells(r - 1, c), cells(r + 1, c), cells(r, c - 1),
                                       cells(r, c + 1)};
            int active = 0;
            double strongest = 0.0;
            for (const double v : incident) {
                if (v > 0.0) {
                    ++active;
                    strongest = std::max(strongest, v);
                }
            }
            cells(r, c) = active >= 2 ? strongest : 0.0;
        }
    }
}

BoundaryGrid to_boundary_grid(const SparseBoundaries& boundaries)
{
    Raster<double> cells = Raster<double>::Zero(2 * boundaries.height() - 1, 2 * boundaries.width() - 1);
    for (const auto& [pair, strength] : boundaries.segment_strengths())
        for (const EdgelCoord e : boundaries.segment(pair).edgels)
            cells(e.grid_row, e.grid_col) = strength;
    render_junctions(cells);
    return BoundaryGrid(std::move(cells));
}

SparseBoundaries from_boundary_grid(const BoundaryGrid& grid)
{
    const int w = grid.pixel_width();
    const int h = grid.pixel_height();
    Raster<std::int32_t> labels = Raster<std::int32_t>::Constant(h, w, -1);
    std::int32_t next = 0;
    std::deque<PixelCoord> queue;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (labels(r, c) >= 0)
                continue;
            labels(r, c) = next;
            queue.push_back({r, c});
            while (!queue.empty()) {
                const PixelCoord p = queue.front();
                queue.pop_front();
                auto visit = [&](int nr, int nc, int er, int ec) {
                    if (nr < 0 || nc < 0 || nr >= h || nc >= w || labels(nr, nc) >= 0)
                        return;
                    if (grid(er, ec) > 0.0)
                        return;
                    labels(nr, nc) = next;
                    queue.push_back({nr, nc});
                };
                visit(p.row - 1, p.col, 2 * p.row - 1, 2 * p.col);
                visit(p.row + 1, p.col, 2 * p.row + 1, 2 * p.col);
                visit(p.row, p.col - 1, 2 * p.row, 2 * p.col - 1);
                visit(p.row, p.col + 1, 2 * p.row, 2 * p.col + 1);
            }
            ++next;
        }
    }

    std::unordered_map<std::uint64_t, BoundarySegment> found;
    for_each_grid_edgel(w, h, [&](EdgelCoord e, PixelCoord p, PixelCoord q) {
        const int lp = labels(p.row, p.col);
        const int lq = labels(q.row, q.col);
        if (lp == lq)
            return;
        const RegionPair pair = RegionPair::of(lp, lq);
        auto [it, inserted] = found.try_emplace(pair.key());
        BoundarySegment& s = it->second;
        if (inserted) {
            s.region_a = pair.a;
            s.region_b = pair.b;
        }
        s.strength = std::max(s.strength, grid(e.grid_row, e.grid_col));
        s.edgels.push_back(e);
    });
    std::vector<BoundarySegment> segments;
    segments.reserve(found.size());
    for (auto& [key, s] : found)
        segments.push_back(std::move(s));
    std::sort(segments.begin(), segments.end(),
              [](const BoundarySegment& x, const BoundarySegment& y) { return x.pair() < y.pair(); });
    return SparseBoundaries(LabelMap(std::move(labels)), std::move(segments));
}

} // namespace sucm
