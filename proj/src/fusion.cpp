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

#include "sparseucm/fusion.hpp"

#include <string>

namespace sucm {

double resolve_beta(const LabelMap& y, std::optional<double> beta)
{
    if (beta) {
        if (!(*beta > 0.0 && *beta < 1.0))
            throw ContractError("class_balanced_loss: beta must lie in (0, 1)");
        return *beta;
    }
    const auto& labels = y.labels();
    const double negatives = static_cast<double>((labels == 0).count());
    return negatives / static_cast<double>(labels.size());
}

ContourMap fuse_sides(const SideActivations& sides, const FusionWeights& weights)
{
    if (sides.maps.empty())
        throw ContractError("fuse_sides: need at least one side output");
    if (weights.h.size() != sides.maps.size())
        throw ContractError("fuse_sides: " + std::to_string(weights.h.size()) + " weights for " +
                            std::to_string(sides.maps.size()) + " side outputs");
    if (sides.target_width < 1 || sides.target_height < 1)
        throw ContractError("fuse_sides: target dimensions must be >= 1");

    std::vector<Raster<float>> resampled;
    resampled.reserve(sides.maps.size());
    for (const auto& m : sides.maps)
        resampled.push_back(bilinear_resample(m, sides.target_width, sides.target_height));

    Raster<float> out(sides.target_height, sides.target_width);
    std::vector<double> terms(sides.maps.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        for (std::size_t m = 0; m < terms.size(); ++m)
            terms[m] = weights.h[m] * static_cast<double>(resampled[m].data()[i]);
        std::sort(terms.begin(), terms.end());
        double z = 0.0;
        for (const double t : terms)
            z += t;
        out.data()[i] = static_cast<float>(1.0 / (1.0 + std::exp(-z)));
    }
    return ContourMap(std::move(out));
}

} // namespace sucm
