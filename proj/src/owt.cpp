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

#include "sparseucm/owt.hpp"

#include <cmath>
#include <numbers>

namespace sucm {

double interpolate_bins(std::span<const double> responses, double angle)
{
    const int K = static_cast<int>(responses.size());
    if (K < 2)
        throw ContractError("interpolate_bins: need at least 2 bins");
    constexpr double snap = 1e-9;
    const double u = wrap_angle(angle) / (std::numbers::pi / K) - 0.5;
    double base = std::floor(u);
    double frac = u - base;
    if (frac < snap) {
        frac = 0.0;
    } else if (frac > 1.0 - snap) {
        base += 1.0;
        frac = 0.0;
    }
    const int lo = ((static_cast<int>(base) % K) + K) % K;
    const int hi = (lo + 1) % K;
    if (frac == 0.0)
        return responses[static_cast<std::size_t>(lo)];
    return (1.0 - frac) * responses[static_cast<std::size_t>(lo)] + frac * responses[static_cast<std::size_t>(hi)];
}

SparseBoundaries owt_reweight(const SparseBoundaries& boundaries, const BinStack& bins, double poly_tol)
{
    if (bins.width() != boundaries.width() || bins.height() != boundaries.height())
        throw ContractError("owt_reweight: bin stack is " + std::to_string(bins.width()) + "x" +
                            std::to_string(bins.height()) + ", boundaries are " +
                            std::to_string(boundaries.width()) + "x" + std::to_string(boundaries.height()));
    SparseBoundaries out = boundaries;
    std::vector<double> at_midpoint(static_cast<std::size_t>(bins.bins()));
    for (const auto& [pair, chains] : simplify_to_polygons(boundaries, poly_tol)) {
        double mean = 0.0;
        std::size_t n = 0;
        for (const PolygonChain& chain : chains) {
            for (std::size_t i = 0; i < chain.trace.edgels.size(); ++i) {
                const auto [p, q] = edgel_pixels(chain.trace.edgels[i]);
                for (int k = 0; k < bins.bins(); ++k)
                    at_midpoint[static_cast<std::size_t>(k)] =
                        0.5 * (static_cast<double>(bins(k, p.row, p.col)) + bins(k, q.row, q.col));
                const double angle = chain.segment_angles[static_cast<std::size_t>(chain.edgel_side[i])];
                const double value = interpolate_bins(at_midpoint, angle);
                mean += (value - mean) / static_cast<double>(++n);
            }
        }
        out.set_strength(pair, mean);
    }
    return out;
}

} // namespace sucm
