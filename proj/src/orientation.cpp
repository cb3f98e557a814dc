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

#include "sparseucm/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace sucm {

BinSpec::BinSpec(int bins) : bins_(bins)
{
    if (bins_ < 2)
        throw ContractError("BinSpec: K must be >= 2");
}

double BinSpec::bin_width() const
{
    return std::numbers::pi / bins_;
}

double BinSpec::central_angle(int k) const
{
    if (k < 1 || k > bins_)
        throw ContractError("BinSpec: class index out of range");
    return (k - 0.5) * std::numbers::pi / bins_;
}

int BinSpec::bin_of(double angle) const
{
    const double u = wrap_angle(angle) * bins_ / std::numbers::pi + 1e-9;
    const int k = static_cast<int>(std::floor(u));
    return (k >= bins_ ? 0 : k) + 1;
}

OrientationMap decode_orientation(const BinStack& bins, const BinSpec& spec, const DecodeOptions& options)
{
    const int K = bins.bins();
    if (K != spec.bins())
        throw ContractError("decode_orientation: K mismatch, stack has " + std::to_string(K) +
                            " bins, spec expects " + std::to_string(spec.bins()));
    if (!(options.strong_ratio > 0.0 && options.strong_ratio <= 1.0))
        throw ContractError("decode_orientation: strong_ratio must be in (0, 1]");
    if (!(options.eps >= 0.0))
        throw ContractError("decode_orientation: eps must be >= 0");

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(0.0, std::numbers::pi);
    const double width = spec.bin_width();

    Raster<double> angles(bins.height(), bins.width());
    for (int r = 0; r < bins.height(); ++r) {
        for (int c = 0; c < bins.width(); ++c) {
            int best = 0;
            for (int k = 1; k < K; ++k)
                if (bins(k, r, c) > bins(best, r, c))
                    best = k;
            const double top = bins(best, r, c);
            if (top < options.eps) {
                const double a = uniform(rng);
                angles(r, c) = a < std::numbers::pi ? a : 0.0;
                continue;
            }
            int second = best == 0 ? 1 : 0;
            for (int k = 0; k < K; ++k)
                if (k != best && bins(k, r, c) > bins(second, r, c))
                    second = k;
            const double runner = bins(second, r, c);
            const int step = (second - best + K) % K;
            const bool neighbour = step == 1 || step == K - 1;
            if (!neighbour || runner <= 0.0 || runner < options.strong_ratio * top) {
                angles(r, c) = spec.central_angle(best + 1);
                continue;
            }
            // Average along the arc from the lower bin (counter-clockwise
            // order, wrapping K-1 -> 0) to its neighbour.
            int lo = best;
            if (K == 2)
                lo = 0;
            else if (step == K - 1)
                lo = second;
            const int hi = (lo + 1) % K;
            const double w_lo = bins(lo, r, c);
            const double w_hi = bins(hi, r, c);
            angles(r, c) = wrap_angle(spec.central_angle(lo + 1) + width * (w_hi / (w_lo + w_hi)));
        }
    }
    return OrientationMap(std::move(angles));
}

ContourMap decode_confidence(const BinStack& bins)
{
    Raster<float> top = bins.bin(0);
    for (int k = 1; k < bins.bins(); ++k)
        top = top.max(bins.bin(k));
    return ContourMap(std::move(top));
}

GtOrientationLabels assign_gt_orientations(const LabelMap& gt, const BinSpec& spec, double tol)
{
    const SparseBoundaries sb = SparseBoundaries::from_label_map(gt);
    GtOrientationLabels out;
    out.entries.reserve(sb.edgel_count());
    for (const auto& [pair, chains] : simplify_to_polygons(sb, tol)) {
        for (const PolygonChain& chain : chains) {
            const int sides = static_cast<int>(chain.segment_angles.size());
            for (const EdgelCoord e : chain.trace.edgels) {
                int nearest = 0;
                double best = distance_to_side(chain, 0, e);
                for (int s = 1; s < sides; ++s) {
                    const double d = distance_to_side(chain, s, e);
                    if (d < best) {
                        best = d;
                        nearest = s;
                    }
                }
                out.entries.push_back({e, spec.bin_of(chain.segment_angles[static_cast<std::size_t>(nearest)])});
            }
        }
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const GtEdgelLabel& a, const GtEdgelLabel& b) { return a.edgel < b.edgel; });
    return out;
}

namespace {

/// Correlation along one axis with replicated borders. `weights[i]` applies
/// to offset i - radius. Odd kernels are applied as weighted differences of
/// mirrored samples, so flat input gives exactly zero.
Raster<double> correlate(const Raster<double>& in, const std::vector<double>& weights, bool along_cols, bool odd)
{
    const int radius = static_cast<int>(weights.size() / 2);
    const int rows = static_cast<int>(in.rows());
    const int cols = static_cast<int>(in.cols());
    auto at = [&](int r, int c, int i) {
        return along_cols ? in(r, std::clamp(c + i, 0, cols - 1)) : in(std::clamp(r + i, 0, rows - 1), c);
    };
    Raster<double> out = Raster<double>::Zero(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double acc = odd ? 0.0 : weights[static_cast<std::size_t>(radius)] * in(r, c);
            for (int i = 1; i <= radius; ++i) {
                const double w = weights[static_cast<std::size_t>(radius + i)];
                acc += odd ? w * (at(r, c, i) - at(r, c, -i)) : w * (at(r, c, i) + at(r, c, -i));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

} // namespace

GradientOrientation local_gradient_orientation(const ContourMap& contours, double sigma)
{
    if (!(sigma > 0.0))
        throw ContractError("local_gradient_orientation: sigma must be > 0");
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> smooth(static_cast<std::size_t>(2 * radius + 1));
    std::vector<double> derive(smooth.size());
    for (int i = -radius; i <= radius; ++i)
        smooth[static_cast<std::size_t>(i + radius)] = std::exp(-0.5 * i * i / (sigma * sigma));
    const double mass = std::accumulate(smooth.begin(), smooth.end(), 0.0);
    double slope = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double& g = smooth[static_cast<std::size_t>(i + radius)];
        g /= mass;
        derive[static_cast<std::size_t>(i + radius)] = i * g / (sigma * sigma);
        slope += i * derive[static_cast<std::size_t>(i + radius)];
    }
    // Unit response to a unit ramp.
    for (double& d : derive)
        d /= slope;

    const Raster<double> f = contours.values().cast<double>();
    const Raster<double> gx = correlate(correlate(f, smooth, false, false), derive, true, true);
    const Raster<double> gy = correlate(correlate(f, smooth, true, false), derive, false, true);

    Raster<double> angles(f.rows(), f.cols());
    for (Eigen::Index i = 0; i < f.size(); ++i)
        angles.data()[i] = wrap_angle(std::atan2(gy.data()[i], gx.data()[i]) + 0.5 * std::numbers::pi);
    const Raster<double> magnitude = (gx.square() + gy.square()).sqrt();
    const double top = magnitude.maxCoeff();
    Raster<float> confidence = top > 0.0 ? Raster<float>((magnitude / top).cast<float>())
                                         : Raster<float>(Raster<float>::Zero(f.rows(), f.cols()));
    return {OrientationMap(std::move(angles)), ContourMap(std::move(confidence))};
}

OrientationCurve eval_orientation(const OrientationMap& predicted, const ContourMap& confidence,
                                  const GtOrientationLabels& gt, const BinSpec& spec)
{
    if (gt.entries.empty())
        throw ContractError("eval_orientation: empty ground truth");
    if (predicted.width() != confidence.width() || predicted.height() != confidence.height())
        throw ContractError("eval_orientation: prediction and confidence differ in size");

    const std::size_t n = gt.entries.size();
    std::vector<float> conf(n);
    std::vector<char> correct(n);
    std::vector<int> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const GtEdgelLabel& g = gt.entries[i];
        if (g.bin < 1 || g.bin > spec.bins())
            throw ContractError("eval_orientation: ground-truth class out of range");
        const PixelCoord p = owning_pixel(g.edgel);
        if (p.row < 0 || p.col < 0 || p.row >= predicted.height() || p.col >= predicted.width())
            throw ContractError("eval_orientation: ground-truth edgel outside the prediction");
        conf[i] = confidence(p.row, p.col);
        truth[i] = g.bin;
        correct[i] = spec.bin_of(predicted(p.row, p.col)) == g.bin;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return conf[a] > conf[b]; });

    std::vector<std::size_t> seen(static_cast<std::size_t>(spec.bins()) + 1, 0);
    std::vector<std::size_t> hits(seen.size(), 0);
    std::size_t admitted = 0;
    OrientationCurve curve;
    curve.accuracy.reserve(100);
    for (std::size_t p = 1; p <= 100; ++p) {
        std::size_t want = (p * n + 99) / 100;
        while (want < n && conf[order[want]] == conf[order[want - 1]])
            ++want;
        for (; admitted < want; ++admitted) {
            const std::size_t i = order[admitted];
            ++seen[static_cast<std::size_t>(truth[i])];
            hits[static_cast<std::size_t>(truth[i])] += correct[i] ? 1 : 0;
        }
        double sum = 0.0;
        int present = 0;
        for (std::size_t k = 1; k < seen.size(); ++k) {
            if (seen[k] == 0)
                continue;
            sum += static_cast<double>(hits[k]) / static_cast<double>(seen[k]);
            ++present;
        }
        curve.accuracy.push_back(sum / present);
    }
    curve.auc = std::accumulate(curve.accuracy.begin(), curve.accuracy.end(), 0.0) / 100.0;
    return curve;
}

} // namespace sucm
