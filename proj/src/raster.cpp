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

#include "sparseucm/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_map>

namespace sucm {

ContourMap::ContourMap(Raster<float> values) : values_(std::move(values))
{
    if (values_.size() == 0)
        throw ContractError("ContourMap: empty map");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        const float v = values_.data()[i];
        if (!(v >= 0.0f && v <= 1.0f))
            throw ContractError("ContourMap: value outside [0,1] at index " + std::to_string(i));
    }
}

ContourMap ContourMap::clamped(Raster<float> values, std::size_t* clamped_count)
{
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        float& v = values.data()[i];
        if (std::isnan(v))
            throw ContractError("ContourMap: NaN value at index " + std::to_string(i));
        if (v < 0.0f) {
            v = 0.0f;
            ++count;
        } else if (v > 1.0f) {
            v = 1.0f;
            ++count;
        }
    }
    if (clamped_count)
        *clamped_count = count;
    return ContourMap(std::move(values));
}

ContourMap ContourMap::constant(int width, int height, float value)
{
    return ContourMap(Raster<float>::Constant(height, width, value));
}

bool operator==(const ContourMap& a, const ContourMap& b)
{
    return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
           (a.values_ == b.values_).all();
}

LabelMap::LabelMap(Raster<std::int32_t> labels) : labels_(std::move(labels))
{
    if (labels_.size() == 0)
        throw ContractError("LabelMap: empty map");
    if (labels_.minCoeff() < 0)
        throw ContractError("LabelMap: negative label");
}

int LabelMap::label_bound() const
{
    return labels_.maxCoeff() + 1;
}

bool LabelMap::is_compact() const
{
    std::vector<char> seen(static_cast<std::size_t>(label_bound()), 0);
    for (Eigen::Index i = 0; i < labels_.size(); ++i)
        seen[static_cast<std::size_t>(labels_.data()[i])] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; });
}

bool operator==(const LabelMap& a, const LabelMap& b)
{
    return a.labels_.rows() == b.labels_.rows() && a.labels_.cols() == b.labels_.cols() &&
           (a.labels_ == b.labels_).all();
}

LabelMap compact_labels(const LabelMap& labels)
{
    const auto& raw = labels.labels();
    std::vector<std::int32_t> values(raw.data(), raw.data() + raw.size());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::unordered_map<std::int32_t, std::int32_t> remap;
    remap.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        remap.emplace(values[i], static_cast<std::int32_t>(i));

    Raster<std::int32_t> out(raw.rows(), raw.cols());
    for (Eigen::Index i = 0; i < raw.size(); ++i)
        out.data()[i] = remap.at(raw.data()[i]);
    return LabelMap(std::move(out));
}

LabelMap connected_components(const LabelMap& labels)
{
    const auto& raw = labels.labels();
    const int h = labels.height();
    const int w = labels.width();
    Raster<std::int32_t> out = Raster<std::int32_t>::Constant(h, w, -1);
    std::int32_t next = 0;
    std::deque<std::pair<int, int>> queue;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (out(r, c) >= 0)
                continue;
            const std::int32_t id = next++;
            const std::int32_t value = raw(r, c);
            out(r, c) = id;
            queue.emplace_back(r, c);
            while (!queue.empty()) {
                const auto [pr, pc] = queue.front();
                queue.pop_front();
                constexpr int dr[] = {-1, 1, 0, 0};
                constexpr int dc[] = {0, 0, -1, 1};
                for (int n = 0; n < 4; ++n) {
                    const int nr = pr + dr[n];
                    const int nc = pc + dc[n];
                    if (nr < 0 || nc < 0 || nr >= h || nc >= w)
                        continue;
                    if (out(nr, nc) >= 0 || raw(nr, nc) != value)
                        continue;
                    out(nr, nc) = id;
                    queue.emplace_back(nr, nc);
                }
            }
        }
    }
    return LabelMap(std::move(out));
}

bool same_partition(const LabelMap& a, const LabelMap& b)
{
    if (a.width() != b.width() || a.height() != b.height())
        return false;
    std::unordered_map<std::int32_t, std::int32_t> ab;
    std::unordered_map<std::int32_t, std::int32_t> ba;
    const auto& la = a.labels();
    const auto& lb = b.labels();
    for (Eigen::Index i = 0; i < la.size(); ++i) {
        const auto x = la.data()[i];
        const auto y = lb.data()[i];
        const auto [ia, new_a] = ab.emplace(x, y);
        const auto [ib, new_b] = ba.emplace(y, x);
        if (ia->second != y || ib->second != x)
            return false;
    }
    return true;
}

BinStack::BinStack(std::vector<Raster<float>> responses) : responses_(std::move(responses))
{
    if (responses_.size() < 2)
        throw ContractError("BinStack: need at least 2 bins");
    const auto rows = responses_.front().rows();
    const auto cols = responses_.front().cols();
    if (rows == 0 || cols == 0)
        throw ContractError("BinStack: empty bins");
    for (const auto& b : responses_) {
        if (b.rows() != rows || b.cols() != cols)
            throw ContractError("BinStack: bins differ in size");
        if (!((b >= 0.0f).all() && (b <= 1.0f).all()))
            throw ContractError("BinStack: response outside [0,1]");
    }
}

OrientationMap::OrientationMap(Raster<double> angles) : angles_(std::move(angles))
{
    if (angles_.size() == 0)
        throw ContractError("OrientationMap: empty map");
    if (!((angles_ >= 0.0).all() && (angles_ < std::numbers::pi).all()))
        throw ContractError("OrientationMap: angle outside [0, pi)");
}

double wrap_angle(double theta)
{
    double t = std::fmod(theta, std::numbers::pi);
    if (t < 0.0)
        t += std::numbers::pi;
    return t >= std::numbers::pi ? 0.0 : t;
}

BoundaryGrid::BoundaryGrid(Raster<double> cells) : cells_(std::move(cells))
{
    if (cells_.rows() % 2 == 0 || cells_.cols() % 2 == 0)
        throw ContractError("BoundaryGrid: dimensions must be odd");
    for (Eigen::Index r = 0; r < cells_.rows(); r += 2)
        for (Eigen::Index c = 0; c < cells_.cols(); c += 2)
            if (cells_(r, c) != 0.0)
                throw ContractError("BoundaryGrid: pixel cell must be 0");
}

BoundaryGrid BoundaryGrid::zeros(int width, int height)
{
    if (width < 1 || height < 1)
        throw ContractError("BoundaryGrid: dimensions must be >= 1");
    return BoundaryGrid(Raster<double>::Zero(2 * height - 1, 2 * width - 1));
}

void BoundaryGrid::set(int grid_row, int grid_col, double value)
{
    if ((grid_row & 1) == 0 && (grid_col & 1) == 0)
        throw ContractError("BoundaryGrid: cannot write a pixel cell");
    cells_(grid_row, grid_col) = value;
}

ContourMap resample_nearest(const ContourMap& map, int new_width, int new_height)
{
    return ContourMap(resample_nearest(map.values(), new_width, new_height));
}

LabelMap resample_nearest(const LabelMap& map, int new_width, int new_height)
{
    if (new_width == map.width() && new_height == map.height())
        return map;
    return compact_labels(LabelMap(resample_nearest(map.labels(), new_width, new_height)));
}

} // namespace sucm
