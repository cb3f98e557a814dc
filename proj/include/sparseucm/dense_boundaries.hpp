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

#include <cstddef>

#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

/// Partition held as a label matrix plus a full boundary grid of segment
/// strengths. Every erase sweeps the whole grid: the baseline that the sparse
/// representation is measured against. Produces the same EraseResult as
/// SparseBoundaries::erase_segment for the same call sequence.
class DenseBoundaries {
public:
    explicit DenseBoundaries(const SparseBoundaries& boundaries);

    /// Sorted by pair; found by sweeping the grid.
    std::vector<std::pair<RegionPair, double>> segment_strengths() const;
    EraseResult erase_segment(RegionPair pair);

    LabelMap labels() const { return compact_labels(LabelMap(labels_)); }
    const Raster<double>& cells() const { return cells_; }

    /// Grid and pixel cells visited by erase_segment.
    std::size_t touched() const { return touched_; }

private:
    Raster<std::int32_t> labels_;
    Raster<double> cells_;
    std::size_t touched_ = 0;
};

} // namespace sucm
