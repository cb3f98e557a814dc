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

#include <cstdint>
#include <filesystem>

#include "sparseucm/raster.hpp"

namespace sucm {

/// Raw binary PGM (P5) contents; samples are in [0, maxval].
struct PgmImage {
    int maxval = 255;
    Raster<std::uint16_t> samples;
};

PgmImage read_pgm(const std::filesystem::path& path);
void write_pgm(const PgmImage& image, const std::filesystem::path& path);

/// Raw values become labels. With `compact` the labels are remapped to 0..R-1.
LabelMap read_pgm_labels(const std::filesystem::path& path, bool compact = true);
/// Divides by maxval.
ContourMap read_pgm_contours(const std::filesystem::path& path);

/// bit_depth 8 writes maxval 255, bit_depth 16 writes maxval 65535. Throws
/// ContractError when a label does not fit.
void write_pgm(const LabelMap& labels, const std::filesystem::path& path, int bit_depth = 16);
/// Rounds v * maxval to the nearest sample.
void write_pgm(const ContourMap& map, const std::filesystem::path& path, int bit_depth = 16);

/// Grayscale "Pf" PFM. Scanlines are stored bottom-to-top as the format
/// prescribes; the returned raster is top-to-bottom. NaN is rejected.
Raster<float> read_pfm_raw(const std::filesystem::path& path);
void write_pfm(const Raster<float>& values, const std::filesystem::path& path);

struct PfmContours {
    ContourMap map;
    std::size_t clamped = 0;
};

PfmContours read_pfm(const std::filesystem::path& path);
void write_pfm(const ContourMap& map, const std::filesystem::path& path);

/// Angles are stored as float; values that round up to pi wrap to 0.
OrientationMap read_orientation_pfm(const std::filesystem::path& path);
void write_pfm(const OrientationMap& angles, const std::filesystem::path& path);

/// Bin k (1-based) lives in `dir/bins_k<k>.pfm`.
std::filesystem::path bin_file(const std::filesystem::path& dir, int k);
/// Reads exactly K bins. Out-of-range responses are clamped, `clamped`
/// receives the total. Throws ContractError when the directory holds a
/// different number of bins than K.
BinStack read_bin_stack(const std::filesystem::path& dir, int K, std::size_t* clamped = nullptr);
void write_bin_stack(const BinStack& bins, const std::filesystem::path& dir);

} // namespace sucm
