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

#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

/// Catchment basins of the contour map, flooded from its regional minima
/// with 4-connectivity. Pixels of equal strength are processed first in
/// first out; minima are seeded in row-major order. Each segment's strength
/// is the mean over its edgels of the two adjacent pixel strengths.
SparseBoundaries watershed(const ContourMap& contours);

} // namespace sucm
