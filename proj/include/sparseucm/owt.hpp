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

#include "sparseucm/orientation.hpp"
#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

/// Response of the bins at fractional angle position: linear interpolation
/// between the two bins whose central angles bracket `angle` (circular).
/// `responses` holds one value per bin, 0-based.
double interpolate_bins(std::span<const double> responses, double angle);

/// Oriented watershed reweighting. Every segment is approximated by polygon
/// chains; each edgel reads the bin responses at its midpoint (mean of its two
/// pixels) interpolated at its polygon side's angle, and the segment strength
/// becomes the mean of those values.
SparseBoundaries owt_reweight(const SparseBoundaries& boundaries, const BinStack& bins, double poly_tol);

} // namespace sucm
