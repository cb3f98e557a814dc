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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sparseucm/bench.hpp"
#include "sparseucm/fusion.hpp"
#include "sparseucm/hierarchy.hpp"
#include "sparseucm/netpbm.hpp"
#include "sparseucm/orientation.hpp"
#include "sparseucm/owt.hpp"
#include "sparseucm/serialization.hpp"
#include "sparseucm/watershed.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kFormatError = 3;
constexpr int kContractError = 4;

void warn_clamped(const std::string& what, std::size_t count)
{
    if (count > 0)
        std::cerr << "warning: clamped " << count << " value(s) of " << what << " into [0,1]\n";
}

sucm::BinStack resample_bins(const sucm::BinStack& bins, int width, int height)
{
    if (bins.width() == width && bins.height() == height)
        return bins;
    std::vector<sucm::Raster<float>> out;
    for (int k = 0; k < bins.bins(); ++k)
        out.push_back(sucm::resample_nearest(bins.bin(k), width, height));
    return sucm::BinStack(std::move(out));
}

struct BuildArgs {
    std::string contours;
    std::string bins;
    int K = 8;
    double poly_tol = 3.0;
    std::vector<std::string> scales;
    std::string weights;
    std::string out;
};

int run_build(const BuildArgs& args)
{
    std::vector<std::string> inputs{args.contours};
    inputs.insert(inputs.end(), args.scales.begin(), args.scales.end());

    std::optional<sucm::BinStack> bins;
    if (!args.bins.empty()) {
        std::size_t clamped = 0;
        bins = sucm::read_bin_stack(args.bins, args.K, &clamped);
        warn_clamped(args.bins, clamped);
    }
    std::vector<double> weights;
    if (!args.weights.empty())
        weights = sucm::read_weights_json(args.weights);

    std::vector<sucm::RegionHierarchy> hierarchies;
    for (const std::string& path : inputs) {
        sucm::PfmContours contours = sucm::read_pfm(path);
        warn_clamped(path, contours.clamped);
        sucm::SparseBoundaries sb = sucm::watershed(contours.map);
        if (bins)
            sb = sucm::owt_reweight(sb, resample_bins(*bins, sb.width(), sb.height()), args.poly_tol);
        hierarchies.push_back(sucm::build_ucm(sb));
    }
    if (!weights.empty() && weights.size() != hierarchies.size())
        throw sucm::ContractError("--weights lists " + std::to_string(weights.size()) + " values for " +
                                  std::to_string(hierarchies.size()) + " scales");

    const sucm::RegionHierarchy result =
        hierarchies.size() == 1 && weights.empty() ? hierarchies.front()
                                                   : sucm::combine_multiscale(hierarchies, weights);
    sucm::write_hierarchy(result, args.out);
    const sucm::BoundaryGrid ucm = sucm::to_ucm_grid(result);
    sucm::write_pfm(sucm::Raster<float>(ucm.cells().cast<float>()), sucm::HierarchyFiles::beside(args.out).ucm_pfm);
    return 0;
}

struct ThresholdArgs {
    std::string hierarchy;
    double t = 0.0;
    std::string out;
};

int run_threshold(const ThresholdArgs& args)
{
    if (!(args.t >= 0.0))
        throw sucm::ContractError("--t must be >= 0");
    const sucm::RegionHierarchy h = sucm::read_hierarchy(args.hierarchy);
    sucm::write_pgm(sucm::threshold(h, args.t), args.out, 16);
    return 0;
}

struct BenchArgs {
    int width = 0;
    int height = 0;
    int regions = 0;
    std::string repr;
    std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& args)
{
    sucm::BenchConfig config;
    config.width = args.width;
    config.height = args.height;
    config.regions = args.regions;
    config.repr = args.repr == "dense" ? sucm::Representation::dense : sucm::Representation::sparse;
    config.seed = args.seed;
    std::cout << sucm::to_json(sucm::run_bench(config)).dump() << '\n';
    return 0;
}

struct DecodeArgs {
    std::string bins;
    int K = 8;
    double strong_ratio = 0.5;
    double eps = 0.01;
    std::uint64_t seed = 0;
    std::string out;
    std::string confidence_out;
};

int run_decode(const DecodeArgs& args)
{
    std::size_t clamped = 0;
    const sucm::BinStack bins = sucm::read_bin_stack(args.bins, args.K, &clamped);
    warn_clamped(args.bins, clamped);
    sucm::DecodeOptions options;
    options.strong_ratio = args.strong_ratio;
    options.eps = args.eps;
    options.seed = args.seed;
    sucm::write_pfm(sucm::decode_orientation(bins, sucm::BinSpec(args.K), options), args.out);
    if (!args.confidence_out.empty())
        sucm::write_pfm(sucm::decode_confidence(bins), args.confidence_out);
    return 0;
}

struct LocalArgs {
    std::string contours;
    double sigma = 1.0;
    std::string out;
    std::string confidence_out;
};

int run_local(const LocalArgs& args)
{
    const sucm::PfmContours contours = sucm::read_pfm(args.contours);
    warn_clamped(args.contours, contours.clamped);
    const sucm::GradientOrientation g = sucm::local_gradient_orientation(contours.map, args.sigma);
    sucm::write_pfm(g.angles, args.out);
    if (!args.confidence_out.empty())
        sucm::write_pfm(g.confidence, args.confidence_out);
    return 0;
}

struct GtArgs {
    std::string gt;
    int K = 8;
    double tol = 3.0;
    std::string out;
};

int run_gt(const GtArgs& args)
{
    const sucm::LabelMap gt = sucm::read_pgm_labels(args.gt);
    sucm::write_gt_labels_csv(sucm::assign_gt_orientations(gt, sucm::BinSpec(args.K), args.tol), args.out);
    return 0;
}

struct EvalArgs {
    std::string angles;
    std::string confidence;
    std::string gt;
    int K = 8;
    std::string out;
};

int run_eval(const EvalArgs& args)
{
    const sucm::OrientationMap angles = sucm::read_orientation_pfm(args.angles);
    const sucm::PfmContours confidence = sucm::read_pfm(args.confidence);
    warn_clamped(args.confidence, confidence.clamped);
    const sucm::GtOrientationLabels gt = sucm::read_gt_labels_csv(args.gt);
    const sucm::OrientationCurve curve = sucm::eval_orientation(angles, confidence.map, gt, sucm::BinSpec(args.K));
    if (!args.out.empty())
        sucm::write_curve_csv(curve, args.out);
    std::cout << nlohmann::json{{"auc", curve.auc}}.dump() << '\n';
    return 0;
}

struct LossArgs {
    std::string p;
    std::string y;
    std::string beta = "auto";
};

int run_loss(const LossArgs& args)
{
    std::optional<double> beta;
    if (args.beta != "auto") {
        try {
            std::size_t used = 0;
            beta = std::stod(args.beta, &used);
            if (used != args.beta.size())
                throw std::invalid_argument(args.beta);
        } catch (const std::exception&) {
            throw sucm::ContractError("--beta must be 'auto' or a number in (0,1)");
        }
    }
    const sucm::PfmContours p = sucm::read_pfm(args.p);
    warn_clamped(args.p, p.clamped);
    const sucm::LabelMap y = sucm::read_pgm_labels(args.y, false);
    std::printf("%.12g\n", sucm::class_balanced_loss(p.map, y, beta));
    return 0;
}

struct FuseArgs {
    std::vector<std::string> sides;
    std::string weights;
    int width = 0;
    int height = 0;
    std::string out;
};

int run_fuse(const FuseArgs& args)
{
    sucm::SideActivations sides;
    for (const std::string& path : args.sides)
        sides.maps.push_back(sucm::read_pfm_raw(path));
    sides.target_width = args.width > 0 ? args.width : static_cast<int>(sides.maps.front().cols());
    sides.target_height = args.height > 0 ? args.height : static_cast<int>(sides.maps.front().rows());
    sucm::FusionWeights weights{sucm::read_weights_json(args.weights)};
    sucm::write_pfm(sucm::fuse_sides(sides, weights), args.out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hierarchical segmentation from contour and orientation maps"};
    app.require_subcommand(1);

    BuildArgs build;
    auto* cmd_build = app.add_subcommand("build", "Watershed, optional OWT, UCM, optional multiscale combination");
    cmd_build->add_option("--contours", build.contours, "Contour map (PFM)")->required();
    cmd_build->add_option("--bins", build.bins, "Directory of bins_k<k>.pfm orientation responses");
    cmd_build->add_option("--K", build.K, "Number of orientation bins")->capture_default_str();
    cmd_build->add_option("--poly-tol", build.poly_tol, "Polygon tolerance in pixels")->capture_default_str();
    cmd_build->add_option("--scales", build.scales, "Further contour maps to combine (PFM)");
    cmd_build->add_option("--weights", build.weights, "JSON list of per-scale weights");
    cmd_build->add_option("--out", build.out, "Hierarchy JSON to write")->required();

    ThresholdArgs thr;
    auto* cmd_threshold = app.add_subcommand("threshold", "Partition of a hierarchy at one strength");
    cmd_threshold->add_option("--hierarchy", thr.hierarchy, "Hierarchy JSON")->required();
    cmd_threshold->add_option("--t", thr.t, "Threshold")->required();
    cmd_threshold->add_option("--out", thr.out, "Label PGM to write")->required();

    BenchArgs bench;
    auto* cmd_bench = app.add_subcommand("bench", "Sparse vs dense merge benchmark (JSON on stdout)");
    cmd_bench->add_option("--width", bench.width)->required()->check(CLI::PositiveNumber);
    cmd_bench->add_option("--height", bench.height)->required()->check(CLI::PositiveNumber);
    cmd_bench->add_option("--regions", bench.regions)->required()->check(CLI::Range(2, 1 << 30));
    cmd_bench->add_option("--repr", bench.repr)->required()->check(CLI::IsMember({"sparse", "dense"}));
    cmd_bench->add_option("--seed", bench.seed)->capture_default_str();

    DecodeArgs decode;
    auto* cmd_decode = app.add_subcommand("decode-orient", "Orientation map from bin responses");
    cmd_decode->add_option("--bins", decode.bins, "Directory of bins_k<k>.pfm")->required();
    cmd_decode->add_option("--K", decode.K)->capture_default_str();
    cmd_decode->add_option("--strong-ratio", decode.strong_ratio)->capture_default_str();
    cmd_decode->add_option("--eps", decode.eps)->capture_default_str();
    cmd_decode->add_option("--seed", decode.seed)->capture_default_str();
    cmd_decode->add_option("--out", decode.out, "Angle PFM to write")->required();
    cmd_decode->add_option("--confidence-out", decode.confidence_out, "Max-response PFM to write");

    LocalArgs local;
    auto* cmd_local = app.add_subcommand("local-orient", "Local-gradient orientation baseline");
    cmd_local->add_option("--contours", local.contours, "Contour map (PFM)")->required();
    cmd_local->add_option("--sigma", local.sigma)->capture_default_str();
    cmd_local->add_option("--out", local.out, "Angle PFM to write")->required();
    cmd_local->add_option("--confidence-out", local.confidence_out, "Confidence PFM to write");

    GtArgs gt;
    auto* cmd_gt = app.add_subcommand("gt-orient", "Ground-truth edgel orientation classes");
    cmd_gt->add_option("--gt", gt.gt, "Ground-truth label PGM")->required();
    cmd_gt->add_option("--K", gt.K)->capture_default_str();
    cmd_gt->add_option("--tol", gt.tol, "Polygon tolerance in pixels")->capture_default_str();
    cmd_gt->add_option("--out", gt.out, "CSV to write")->required();

    EvalArgs eval;
    auto* cmd_eval = app.add_subcommand("eval-orient", "Accuracy vs confidence curve and its AUC");
    cmd_eval->add_option("--angles", eval.angles, "Predicted angle PFM")->required();
    cmd_eval->add_option("--confidence", eval.confidence, "Confidence PFM")->required();
    cmd_eval->add_option("--gt", eval.gt, "Ground-truth CSV")->required();
    cmd_eval->add_option("--K", eval.K)->capture_default_str();
    cmd_eval->add_option("--out", eval.out, "Curve CSV to write");

    LossArgs loss;
    auto* cmd_loss = app.add_subcommand("loss", "Class-balanced cross-entropy of a probability map");
    cmd_loss->add_option("--p", loss.p, "Probability PFM")->required();
    cmd_loss->add_option("--y", loss.y, "Binary ground-truth PGM")->required();
    cmd_loss->add_option("--beta", loss.beta, "Number in (0,1) or 'auto'")->capture_default_str();

    FuseArgs fuse;
    auto* cmd_fuse = app.add_subcommand("fuse", "Sigmoid of the weighted sum of side activations");
    cmd_fuse->add_option("--sides", fuse.sides, "Side activation PFMs")->required();
    cmd_fuse->add_option("--weights", fuse.weights, "JSON list of fusion weights")->required();
    cmd_fuse->add_option("--width", fuse.width, "Target width (default: first side)");
    cmd_fuse->add_option("--height", fuse.height, "Target height (default: first side)");
    cmd_fuse->add_option("--out", fuse.out, "Fused PFM to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (cmd_build->parsed())
            return run_build(build);
        if (cmd_threshold->parsed())
            return run_threshold(thr);
        if (cmd_bench->parsed())
            return run_bench(bench);
        if (cmd_decode->parsed())
            return run_decode(decode);
        if (cmd_local->parsed())
            return run_local(local);
        if (cmd_gt->parsed())
            return run_gt(gt);
        if (cmd_eval->parsed())
            return run_eval(eval);
        if (cmd_loss->parsed())
            return run_loss(loss);
        if (cmd_fuse->parsed())
            return run_fuse(fuse);
    } catch (const sucm::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormatError;
    } catch (const sucm::ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kContractError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsageError;
}
