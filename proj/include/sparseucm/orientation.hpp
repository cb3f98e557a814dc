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
#include <vector>

#include "sparseucm/polygon.hpp"
#include "sparseucm/raster.hpp"
#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

/// K equal bins over undirected angles. Class k (1-based) covers
/// [(k-1)pi/K, k pi/K) and has central angle (k-0.5)pi/K.
class BinSpec {
public:
    explicit BinSpec(int bins = 8);

    int bins() const { return bins_; }
    double bin_width() const;
    double central_angle(int k) const;
    /// Class containing `angle` (wrapped into [0,pi) first). Angles less than
    /// 1e-9 bin widths below a bin edge count as the upper bin.
    int bin_of(double angle) const;

private:
    int bins_;
};

struct DecodeOptions {
    /// Runner-up must reach this fraction of the max to be averaged in.
    double strong_ratio = 0.5;
    /// Pixels whose max response is below eps get a random angle.
    double eps = 0.01;
    std::uint64_t seed = 0;
};

/// Central angle of the strongest bin; when the runner-up is a circular
/// neighbour with at least strong_ratio of the max, the response-weighted
/// average of the two central angles along the arc between them. Ties go to
/// the smaller bin. Random angles are drawn in row-major pixel order.
OrientationMap decode_orientation(const BinStack& bins, const BinSpec& spec, const DecodeOptions& options = {});

/// max_k B_k per pixel.
ContourMap decode_confidence(const BinStack& bins);

struct GtEdgelLabel {
    EdgelCoord edgel;
    int bin = 1;

    bool operator==(const GtEdgelLabel&) const = default;
};

/// One entry per boundary edgel of the ground-truth partition, sorted by
/// grid coordinate.
struct GtOrientationLabels {
    std::vector<GtEdgelLabel> entries;
};

/// Each boundary edgel gets the class of the nearest side of its own
/// simplified polygon chain (earlier side on ties).
GtOrientationLabels assign_gt_orientations(const LabelMap& gt, const BinSpec& spec, double tol);

struct GradientOrientation {
    OrientationMap angles;
    ContourMap confidence;
};

/// Gaussian-derivative gradient of the contour map (replicated borders);
/// boundary angle is the gradient direction turned by pi/2, confidence the
/// magnitude divided by its maximum.
GradientOrientation local_gradient_orientation(const ContourMap& contours, double sigma);

struct OrientationCurve {
    /// accuracy[p-1] for percentile p = 1..100.
    std::vector<double> accuracy;
    double auc = 0.0;
};

/// Pixel whose prediction scores an edgel: the lower-index neighbour.
inline PixelCoord owning_pixel(EdgelCoord e)
{
    return {e.grid_row / 2, e.grid_col / 2};
}

/// Mean per-class accuracy over the most confident p% of ground-truth edgels
/// (ties with the last admitted confidence included), for p = 1..100; auc is
/// the mean of the curve.
OrientationCurve eval_orientation(const OrientationMap& predicted, const ContourMap& confidence,
                                  const GtOrientationLabels& gt, const BinSpec& spec);

} // namespace sucm
