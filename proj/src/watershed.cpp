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

#include "sparseucm/watershed.hpp"

#include <cstdint>
#include <deque>
#include <queue>
#include <tuple>

namespace sucm {

namespace {

constexpr int kDr[] = {-1, 1, 0, 0};
constexpr int kDc[] = {0, 0, -1, 1};

/// Labels every regional-minimum plateau, numbered in row-major order of its
/// first pixel; all other pixels stay -1.
Raster<std::int32_t> label_minima(const Raster<float>& v, int& count)
{
    const int h = static_cast<int>(v.rows());
    const int w = static_cast<int>(v.cols());
    Raster<std::int32_t> plateau = Raster<std::int32_t>::Constant(h, w, -1);
    Raster<std::int32_t> minima = Raster<std::int32_t>::Constant(h, w, -1);
    std::vector<PixelCoord> members;
    std::deque<PixelCoord> queue;
    int next_plateau = 0;
    count = 0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (plateau(r, c) >= 0)
                continue;
            const float level = v(r, c);
            bool is_minimum = true;
            members.clear();
            plateau(r, c) = next_plateau;
            queue.push_back({r, c});
            while (!queue.empty()) {
                const PixelCoord p = queue.front();
                queue.pop_front();
                members.push_back(p);
                for (int n = 0; n < 4; ++n) {
                    const int nr = p.row + kDr[n];
                    const int nc = p.col + kDc[n];
                    if (nr < 0 || nc < 0 || nr >= h || nc >= w)
                        continue;
                    if (v(nr, nc) < level)
                        is_minimum = false;
                    else if (v(nr, nc) == level && plateau(nr, nc) < 0) {
                        plateau(nr, nc) = next_plateau;
                        queue.push_back({nr, nc});
                    }
                }
            }
            ++next_plateau;
            if (is_minimum) {
                for (const PixelCoord p : members)
                    minima(p.row, p.col) = count;
                ++count;
            }
        }
    }
    return minima;
}

} // namespace

SparseBoundaries watershed(const ContourMap& contours)
{
    const Raster<float>& v = contours.values();
    const int h = contours.height();
    const int w = contours.width();
    int basins = 0;
    Raster<std::int32_t> labels = label_minima(v, basins);

    // (level, arrival order, row, col): FIFO among equal levels.
    using Entry = std::tuple<float, std::uint64_t, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    std::uint64_t order = 0;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (labels(r, c) >= 0)
                queue.emplace(v(r, c), order++, r, c);

    while (!queue.empty()) {
        const auto [level, seq, r, c] = queue.top();
        queue.pop();
        const std::int32_t basin = labels(r, c);
        for (int n = 0; n < 4; ++n) {
            const int nr = r + kDr[n];
            const int nc = c + kDc[n];
            if (nr < 0 || nc < 0 || nr >= h || nc >= w || labels(nr, nc) >= 0)
                continue;
            labels(nr, nc) = basin;
            queue.emplace(std::max(level, v(nr, nc)), order++, nr, nc);
        }
    }

    SparseBoundaries sb = SparseBoundaries::from_label_map(LabelMap(std::move(labels)));
    for (const BoundarySegment& s : sb.segments()) {
        double mean = 0.0;
        std::size_t n = 0;
        for (const EdgelCoord e : s.edgels) {
            const auto [p, q] = edgel_pixels(e);
            const double value = 0.5 * (static_cast<double>(v(p.row, p.col)) + v(q.row, q.col));
            mean += (value - mean) / static_cast<double>(++n);
        }
        sb.set_strength(s.pair(), mean);
    }
    return sb;
}

} // namespace sucm
