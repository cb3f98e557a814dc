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

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "sparseucm/raster.hpp"

namespace sucm {

/// Probabilities are clamped into [kProbabilityClamp, 1 - kProbabilityClamp]
/// before taking logs.
inline constexpr double kProbabilityClamp = 1e-7;

namespace detail {

/// Pairwise (tree) summation in index order; bit-stable for a given input.
inline double pairwise_sum(std::span<const double> terms)
{
    if (terms.size() <= 8) {
        double s = 0.0;
        for (const double t : terms)
            s += t;
        return s;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

template <typename Derived>
void check_loss_inputs(const Eigen::ArrayBase<Derived>& p, const LabelMap& y)
{
    if (p.rows() != y.height() || p.cols() != y.width())
        throw ContractError("class_balanced_loss: probability and label maps differ in size");
    if (y.labels().maxCoeff() > 1)
        throw ContractError("class_balanced_loss: labels must be binary");
}

} // namespace detail

/// beta when given (0 < beta < 1), else |Y-| / |Y|.
double resolve_beta(const LabelMap& y, std::optional<double> beta);

/// -beta * sum_{y=1} log p - (1 - beta) * sum_{y=0} log(1 - p), summed in
/// row-major pairwise order.
template <typename Derived>
double class_balanced_loss(const Eigen::ArrayBase<Derived>& p, const LabelMap& y,
                           std::optional<double> beta = std::nullopt)
{
    detail::check_loss_inputs(p, y);
    const double b = resolve_beta(y, beta);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(p.size()));
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
        for (Eigen::Index c = 0; c < p.cols(); ++c) {
            // The negative term clamps 1 - p itself, exact for float input,
            // instead of rounding 1 - eps first.
            const double pj = static_cast<double>(p(r, c));
            if (y(static_cast<int>(r), static_cast<int>(c)) == 1)
                terms.push_back(b == 0.0 ? 0.0 : -b * std::log(std::clamp(pj, kProbabilityClamp, 1.0 - kProbabilityClamp)));
            else
                terms.push_back(b == 1.0 ? 0.0
                                         : -(1.0 - b) * std::log(std::clamp(1.0 - pj, kProbabilityClamp,
                                                                            1.0 - kProbabilityClamp)));
        }
    }
    return detail::pairwise_sum(terms);
}

inline double class_balanced_loss(const ContourMap& p, const LabelMap& y, std::optional<double> beta = std::nullopt)
{
    return class_balanced_loss(p.values(), y, beta);
}

/// d loss / d p_j: -beta / p_j on positives, (1 - beta) / (1 - p_j) on
/// negatives, 0 where the clamp is active.
template <typename Derived>
Raster<double> class_balanced_loss_gradient(const Eigen::ArrayBase<Derived>& p, const LabelMap& y,
                                            std::optional<double> beta = std::nullopt)
{
    detail::check_loss_inputs(p, y);
    const double b = resolve_beta(y, beta);
    Raster<double> g(p.rows(), p.cols());
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
        for (Eigen::Index c = 0; c < p.cols(); ++c) {
            const double pj = static_cast<double>(p(r, c));
            if (pj < kProbabilityClamp || pj > 1.0 - kProbabilityClamp)
                g(r, c) = 0.0;
            else if (y(static_cast<int>(r), static_cast<int>(c)) == 1)
                g(r, c) = -b / pj;
            else
                g(r, c) = (1.0 - b) / (1.0 - pj);
        }
    }
    return g;
}

/// Bilinear interpolation with pixel-center alignment and edge clamping:
/// output pixel i samples source position (i + 0.5) * n_in / n_out - 0.5.
template <typename Scalar>
Raster<Scalar> bilinear_resample(const Raster<Scalar>& src, int new_width, int new_height)
{
    if (new_width < 1 || new_height < 1 || src.size() == 0)
        throw ContractError("bilinear_resample: dimensions must be >= 1");
    if (new_width == src.cols() && new_height == src.rows())
        return src;
    auto axis = [](Eigen::Index i, Eigen::Index n_out, Eigen::Index n_in) {
        const double s = std::clamp((i + 0.5) * static_cast<double>(n_in) / static_cast<double>(n_out) - 0.5, 0.0,
                                    static_cast<double>(n_in - 1));
        const Eigen::Index lo = static_cast<Eigen::Index>(std::floor(s));
        const Eigen::Index hi = std::min(lo + 1, n_in - 1);
        return std::tuple{lo, hi, s - static_cast<double>(lo)};
    };
    Raster<Scalar> out(new_height, new_width);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        const auto [r0, r1, fr] = axis(r, out.rows(), src.rows());
        for (Eigen::Index c = 0; c < out.cols(); ++c) {
            const auto [c0, c1, fc] = axis(c, out.cols(), src.cols());
            const double top = (1.0 - fc) * src(r0, c0) + fc * src(r0, c1);
            const double bottom = (1.0 - fc) * src(r1, c0) + fc * src(r1, c1);
            out(r, c) = static_cast<Scalar>((1.0 - fr) * top + fr * bottom);
        }
    }
    return out;
}

/// Raw (pre-sigmoid) side outputs, each at its own resolution.
struct SideActivations {
    std::vector<Raster<float>> maps;
    int target_width = 0;
    int target_height = 0;
};

struct FusionWeights {
    std::vector<double> h;
};

/// sigmoid(sum_m h_m * A_m) after resampling every side bilinearly to the
/// target size. Per pixel the weighted terms are added in ascending order,
/// so the result does not depend on side order.
ContourMap fuse_sides(const SideActivations& sides, const FusionWeights& weights);

} // namespace sucm
