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

#include "sparseucm/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sucm {

namespace {

struct Point {
    double x;
    double y;
};

Point to_pixels(GridPoint p)
{
    return {0.5 * p.grid_col, 0.5 * p.grid_row};
}

double point_segment_distance(Point p, Point a, Point b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

GridPoint other_end(EdgelCoord e, GridPoint from)
{
    const auto [u, v] = edgel_endpoints(e);
    return u == from ? v : u;
}

} // namespace

std::vector<BoundaryTrace> trace_boundary(std::span<const EdgelCoord> edgels)
{
    std::vector<EdgelCoord> sorted(edgels.begin(), edgels.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::map<GridPoint, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto [u, v] = edgel_endpoints(sorted[i]);
        incident[u].push_back(i);
        incident[v].push_back(i);
    }
    std::vector<char> used(sorted.size(), 0);

    auto next_unused = [&](GridPoint j) -> std::ptrdiff_t {
        for (const std::size_t i : incident[j])
            if (!used[i])
                return static_cast<std::ptrdiff_t>(i);
        return -1;
    };

    std::vector<BoundaryTrace> runs;
    auto walk = [&](GridPoint start) {
        BoundaryTrace run;
        run.junctions.push_back(start);
        GridPoint at = start;
        for (;;) {
            const std::ptrdiff_t i = next_unused(at);
            if (i < 0)
                break;
            used[static_cast<std::size_t>(i)] = 1;
            const EdgelCoord e = sorted[static_cast<std::size_t>(i)];
            at = other_end(e, at);
            run.edgels.push_back(e);
            run.junctions.push_back(at);
            if (at == start) {
                run.closed = true;
                break;
            }
            if (incident[at].size() != 2)
                break;
        }
        runs.push_back(std::move(run));
    };

    for (const auto& [junction, list] : incident)
        if (list.size() != 2)
            while (next_unused(junction) >= 0)
                walk(junction);
    for (const auto& [junction, list] : incident)
        while (next_unused(junction) >= 0)
            walk(junction);
    return runs;
}

double direction_angle(GridPoint from, GridPoint to)
{
    return wrap_angle(std::atan2(static_cast<double>(to.grid_row - from.grid_row),
                                 static_cast<double>(to.grid_col - from.grid_col)));
}

PolygonChain simplify_trace(const BoundaryTrace& trace, double tol)
{
    if (trace.edgels.empty() || trace.junctions.size() != trace.edgels.size() + 1)
        throw ContractError("simplify_trace: malformed trace");
    if (!(tol >= 0.0))
        throw ContractError("simplify_trace: tolerance must be >= 0");

    const std::size_t last = trace.junctions.size() - 1;
    std::vector<Point> pts;
    pts.reserve(trace.junctions.size());
    for (const GridPoint j : trace.junctions)
        pts.push_back(to_pixels(j));

    std::vector<char> keep(pts.size(), 0);
    keep.front() = keep.back() = 1;
    if (tol == 0.0) {
        std::fill(keep.begin(), keep.end(), 1);
    } else {
        std::vector<std::pair<std::size_t, std::size_t>> stack;
        if (trace.closed && last >= 2) {
            std::size_t far = 1;
            double best = -1.0;
            for (std::size_t k = 1; k < last; ++k) {
                const double d = std::hypot(pts[k].x - pts[0].x, pts[k].y - pts[0].y);
                if (d > best) {
                    best = d;
                    far = k;
                }
            }
            keep[far] = 1;
            stack.emplace_back(far, last);
            stack.emplace_back(0, far);
        } else {
            stack.emplace_back(0, last);
        }
        while (!stack.empty()) {
            const auto [i, j] = stack.back();
            stack.pop_back();
            if (j <= i + 1)
                continue;
            std::size_t far = i + 1;
            double best = -1.0;
            for (std::size_t k = i + 1; k < j; ++k) {
                const double d = point_segment_distance(pts[k], pts[i], pts[j]);
                if (d > best) {
                    best = d;
                    far = k;
                }
            }
            if (best > tol) {
                keep[far] = 1;
                stack.emplace_back(far, j);
                stack.emplace_back(i, far);
            }
        }
    }

    PolygonChain chain;
    chain.trace = trace;
    chain.edgel_side.resize(trace.edgels.size());
    int side = -1;
    for (std::size_t k = 0; k <= last; ++k) {
        if (keep[k]) {
            chain.vertices.push_back(trace.junctions[k]);
            if (chain.vertices.size() >= 2)
                chain.segment_angles.push_back(
                    direction_angle(chain.vertices[chain.vertices.size() - 2], chain.vertices.back()));
            ++side;
        }
        if (k < last)
            chain.edgel_side[k] = side;
    }
    return chain;
}

std::map<RegionPair, std::vector<PolygonChain>> simplify_to_polygons(const SparseBoundaries& boundaries, double tol)
{
    if (!(tol >= 0.0))
        throw ContractError("simplify_to_polygons: tolerance must be >= 0");
    std::map<RegionPair, std::vector<PolygonChain>> out;
    for (const BoundarySegment& s : boundaries.segments()) {
        auto& chains = out[s.pair()];
        for (const BoundaryTrace& run : trace_boundary(s.edgels))
            chains.push_back(simplify_trace(run, tol));
    }
    return out;
}

double distance_to_side(const PolygonChain& chain, int side, EdgelCoord edgel)
{
    const Point mid{0.5 * edgel.grid_col, 0.5 * edgel.grid_row};
    return point_segment_distance(mid, to_pixels(chain.vertices[static_cast<std::size_t>(side)]),
                                  to_pixels(chain.vertices[static_cast<std::size_t>(side) + 1]));
}

} // namespace sucm
