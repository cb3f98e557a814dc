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

#include <Eigen/Core>

#include <cstdint>
#include <numbers>
#include <vector>

#include "sparseucm/errors.hpp"

namespace sucm {

/// Row-major dense image storage. Rows are image rows (y), columns are x.
template <typename T>
using Raster = Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Per-pixel boundary strength in [0,1].
class ContourMap {
public:
    /// Throws ContractError on empty input or any value outside [0,1].
    explicit ContourMap(Raster<float> values);

    /// Clamps into [0,1]; rejects NaN. `clamped_count` receives the number of
    /// entries that had to be moved.
    static ContourMap clamped(Raster<float> values, std::size_t* clamped_count = nullptr);
    static ContourMap constant(int width, int height, float value);

    int width() const { return static_cast<int>(values_.cols()); }
    int height() const { return static_cast<int>(values_.rows()); }
    float operator()(int row, int col) const { return values_(row, col); }
    const Raster<float>& values() const { return values_; }

    friend bool operator==(const ContourMap& a, const ContourMap& b);

private:
    Raster<float> values_;
};

/// Per-pixel region identifiers (non-negative). Most operations require a
/// compact labeling, see compact_labels().
class LabelMap {
public:
    explicit LabelMap(Raster<std::int32_t> labels);

    int width() const { return static_cast<int>(labels_.cols()); }
    int height() const { return static_cast<int>(labels_.rows()); }
    std::int32_t operator()(int row, int col) const { return labels_(row, col); }
    const Raster<std::int32_t>& labels() const { return labels_; }

    /// max label + 1
    int label_bound() const;
    /// True when every label in 0..label_bound()-1 occurs.
    bool is_compact() const;

    friend bool operator==(const LabelMap& a, const LabelMap& b);

private:
    Raster<std::int32_t> labels_;
};

/// Maps the distinct labels, in increasing order, onto 0..R-1.
LabelMap compact_labels(const LabelMap& labels);

/// Relabels 4-connected components, numbered in row-major order of first
/// appearance.
LabelMap connected_components(const LabelMap& labels);

/// Same pixel partition, ignoring label names.
bool same_partition(const LabelMap& a, const LabelMap& b);

/// K per-pixel orientation bin responses in [0,1]. Bins are indexed 0..K-1
/// here; bin index k corresponds to orientation class k+1.
class BinStack {
public:
    explicit BinStack(std::vector<Raster<float>> responses);

    int bins() const { return static_cast<int>(responses_.size()); }
    int width() const { return static_cast<int>(responses_.front().cols()); }
    int height() const { return static_cast<int>(responses_.front().rows()); }
    const Raster<float>& bin(int k) const { return responses_[static_cast<std::size_t>(k)]; }
    float operator()(int k, int row, int col) const { return bin(k)(row, col); }

private:
    std::vector<Raster<float>> responses_;
};

/// Per-pixel undirected angle in [0, pi). Angles are measured from the +x
/// (column) axis toward +y (row, pointing down the image).
class OrientationMap {
public:
    explicit OrientationMap(Raster<double> angles);

    int width() const { return static_cast<int>(angles_.cols()); }
    int height() const { return static_cast<int>(angles_.rows()); }
    double operator()(int row, int col) const { return angles_(row, col); }
    const Raster<double>& angles() const { return angles_; }

private:
    Raster<double> angles_;
};

/// Wraps any finite angle into [0, pi).
double wrap_angle(double theta);

/// (2H-1) x (2W-1) lattice. Pixel (r,c) sits at (2r,2c); cells with exactly
/// one odd coordinate are edgels, (odd,odd) are junctions. 0 means inactive.
class BoundaryGrid {
public:
    /// Throws ContractError on even dimensions or a nonzero pixel cell.
    explicit BoundaryGrid(Raster<double> cells);
    static BoundaryGrid zeros(int width, int height);

    int pixel_width() const { return static_cast<int>(cells_.cols() + 1) / 2; }
    int pixel_height() const { return static_cast<int>(cells_.rows() + 1) / 2; }
    int rows() const { return static_cast<int>(cells_.rows()); }
    int cols() const { return static_cast<int>(cells_.cols()); }

    double operator()(int grid_row, int grid_col) const { return cells_(grid_row, grid_col); }
    /// Throws ContractError when (grid_row, grid_col) is a pixel position.
    void set(int grid_row, int grid_col, double value);
    const Raster<double>& cells() const { return cells_; }

private:
    Raster<double> cells_;
};

inline bool is_edgel_position(int grid_row, int grid_col)
{
    return ((grid_row ^ grid_col) & 1) != 0;
}

inline bool is_junction_position(int grid_row, int grid_col)
{
    return (grid_row & 1) != 0 && (grid_col & 1) != 0;
}

namespace detail {

/// Nearest source index for output index i under pixel-center alignment.
inline Eigen::Index nearest_source(Eigen::Index i, Eigen::Index n_out, Eigen::Index n_in)
{
    const Eigen::Index s = ((2 * i + 1) * n_in) / (2 * n_out);
    return s < n_in ? s : n_in - 1;
}

} // namespace detail

template <typename T>
Raster<T> resample_nearest(const Raster<T>& src, int new_width, int new_height)
{
    if (new_width < 1 || new_height < 1)
        throw ContractError("resample_nearest: dimensions must be >= 1");
    if (new_width == src.cols() && new_height == src.rows())
        return src;
    Raster<T> out(new_height, new_width);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        const Eigen::Index sr = detail::nearest_source(r, out.rows(), src.rows());
        for (Eigen::Index c = 0; c < out.cols(); ++c)
            out(r, c) = src(sr, detail::nearest_source(c, out.cols(), src.cols()));
    }
    return out;
}

ContourMap resample_nearest(const ContourMap& map, int new_width, int new_height);
/// Result is compacted: labels that vanish under downsampling are dropped.
LabelMap resample_nearest(const LabelMap& map, int new_width, int new_height);

} // namespace sucm
