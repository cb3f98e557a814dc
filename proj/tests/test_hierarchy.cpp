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

#include "doctest.h"

#include <fstream>

#include "sparseucm/hierarchy.hpp"
#include "sparseucm/owt.hpp"
#include "sparseucm/serialization.hpp"
#include "sparseucm/watershed.hpp"
#include "test_support.hpp"

using namespace sucm;
using sucm::testing::labels_from;

namespace {

// Plateaus (4-connected equal-value components) with no strictly lower
// neighbour.
int oracle_regional_minima(const Raster<float>& v)
{
    Raster<std::int32_t> raw(v.rows(), v.cols());
    std::map<float, int> codes;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        raw.data()[i] = codes.emplace(v.data()[i], static_cast<int>(codes.size())).first->second;
    const Raster<std::int32_t> plateau = testing::oracle_components(raw);
    std::vector<char> lower(static_cast<std::size_t>(testing::count_labels(plateau)), 0);
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
            const Eigen::Index nr[4] = {r - 1, r + 1, r, r};
            const Eigen::Index nc[4] = {c, c, c - 1, c + 1};
            for (int i = 0; i < 4; ++i)
                if (nr[i] >= 0 && nc[i] >= 0 && nr[i] < v.rows() && nc[i] < v.cols() && v(nr[i], nc[i]) < v(r, c))
                    lower[static_cast<std::size_t>(plateau(r, c))] = 1;
        }
    }
    return static_cast<int>(std::count(lower.begin(), lower.end(), 0));
}

SparseBoundaries with_strengths(const LabelMap& l, std::initializer_list<std::pair<RegionPair, double>> s)
{
    SparseBoundaries sb = SparseBoundaries::from_label_map(l);
    for (const auto& [pair, v] : s)
        sb.set_strength(pair, v);
    return sb;
}

Raster<std::int32_t> binarized_partition(const BoundaryGrid& ucm, double t)
{
    Raster<double> cells = ucm.cells();
    for (Eigen::Index i = 0; i < cells.size(); ++i)
        if (cells.data()[i] <= t)
            cells.data()[i] = 0.0;
    return from_boundary_grid(BoundaryGrid(cells)).base_labels().labels();
}

RegionHierarchy random_hierarchy(testing::Rng& rng, int w, int h)
{
    return build_ucm(watershed(ContourMap(testing::random_contours(w, h, rng))));
}

} // namespace

TEST_CASE("watershed basics")
{
    const SparseBoundaries flat = watershed(ContourMap::constant(6, 4, 0.3f));
    CHECK(flat.region_count() == 1);
    CHECK(flat.segment_count() == 0);

    Raster<float> ridge(1, 5);
    ridge << 0.0f, 0.0f, 1.0f, 0.0f, 0.0f;
    const SparseBoundaries two = watershed(ContourMap(ridge));
    CHECK(two.region_count() == 2);
    REQUIRE(two.segment_count() == 1);
    CHECK(two.segments().front().strength == 0.5);
    CHECK(two.segments().front().edgels.size() == 1);

    Raster<float> ring = Raster<float>::Zero(7, 7);
    for (int i = 1; i <= 5; ++i) {
        ring(1, i) = ring(5, i) = 1.0f;
        ring(i, 1) = ring(i, 5) = 1.0f;
    }
    const SparseBoundaries basins = watershed(ContourMap(ring));
    CHECK(basins.region_count() == 2);
    CHECK(oracle_regional_minima(ring) == 2);
}

TEST_CASE("watershed: one basin per regional minimum, connected, covering")
{
    testing::Rng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const Raster<float> v = testing::random_contours(20, 15, rng);
        const SparseBoundaries sb = watershed(ContourMap(v));
        sb.validate();
        CHECK(sb.region_count() == oracle_regional_minima(v));
        const auto& labels = sb.base_labels().labels();
        CHECK(testing::count_labels(testing::oracle_components(labels)) == testing::count_labels(labels));
    }
}

TEST_CASE("watershed partition is invariant under positive scaling")
{
    testing::Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const Raster<float> v = testing::random_contours(18, 18, rng);
        const LabelMap base = watershed(ContourMap(v)).base_labels();
        for (const float a : {0.5f, 0.25f, 0.125f})
            CHECK(watershed(ContourMap(Raster<float>(v * a))).base_labels() == base);
    }
}

TEST_CASE("watershed segment strength is the mean edgel value")
{
    testing::Rng rng(12);
    const Raster<float> v = testing::random_contours(16, 12, rng);
    const SparseBoundaries sb = watershed(ContourMap(v));
    for (const BoundarySegment& s : sb.segments()) {
        double sum = 0.0;
        for (const EdgelCoord e : s.edgels) {
            const auto [p, q] = edgel_pixels(e);
            sum += 0.5 * (static_cast<double>(v(p.row, p.col)) + v(q.row, q.col));
        }
        CHECK(s.strength == doctest::Approx(sum / static_cast<double>(s.edgels.size())).epsilon(1e-12));
    }
}

TEST_CASE("build_ucm examples")
{
    const RegionHierarchy one = build_ucm(with_strengths(LabelMap(labels_from({{0, 1}})), {{{0, 1}, 0.3}}));
    REQUIRE(one.merges().size() == 1);
    CHECK(one.merges()[0] == Merge{0.3, 0, 1, 2});

    const RegionHierarchy row =
        build_ucm(with_strengths(LabelMap(labels_from({{0, 1, 2}})), {{{0, 1}, 0.2}, {{1, 2}, 0.6}}));
    REQUIRE(row.merges().size() == 2);
    CHECK(row.merges()[0].threshold == 0.2);
    CHECK(row.merges()[1].threshold == 0.6);
    CHECK(row.merges()[1].parent == 4);

    // After the first merge both boundaries toward region 1 are recombined;
    // thresholds must still come out non-decreasing.
    const LabelMap tri(labels_from({{0, 0, 1}, {2, 2, 1}}));
    const RegionHierarchy h = build_ucm(with_strengths(tri, {{{0, 1}, 0.6}, {{0, 2}, 0.1}, {{1, 2}, 0.9}}));
    REQUIRE(h.merges().size() == 2);
    CHECK(h.merges()[0].threshold == 0.1);
    CHECK(h.merges()[1].threshold >= h.merges()[0].threshold);
    CHECK(h.merges()[1].threshold == doctest::Approx((0.6 * 1 + 0.9 * 1) / 2));

    const RegionHierarchy flat = build_ucm(SparseBoundaries::from_label_map(LabelMap(Raster<std::int32_t>::Zero(3, 3))));
    CHECK(flat.merges().empty());
    CHECK((to_ucm_grid(flat).cells() == 0.0).all());
}

TEST_CASE("threshold")
{
    const LabelMap base(labels_from({{0, 1, 2}}));
    const RegionHierarchy row = build_ucm(with_strengths(base, {{{0, 1}, 0.2}, {{1, 2}, 0.6}}));
    CHECK(threshold(row, 0.0) == base);
    CHECK(threshold(row, 0.4).label_bound() == 2);
    CHECK(threshold(row, 0.4) == LabelMap(labels_from({{0, 0, 1}})));
    CHECK(threshold(row, 0.6).label_bound() == 1);
    CHECK(threshold(row, 1e9).label_bound() == 1);
}

TEST_CASE("hierarchy invariants on random inputs")
{
    testing::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const RegionHierarchy h = random_hierarchy(rng, 24, 20);
        CHECK(static_cast<int>(h.merges().size()) == h.base_region_count() - 1);
        for (std::size_t i = 1; i < h.merges().size(); ++i)
            REQUIRE(h.merges()[i].threshold >= h.merges()[i - 1].threshold);
    }
}

TEST_CASE("UCM grid binarization matches threshold")
{
    testing::Rng rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const RegionHierarchy h = random_hierarchy(rng, 20, 16);
        const BoundaryGrid ucm = to_ucm_grid(h);
        const double top = h.merges().empty() ? 1.0 : h.merges().back().threshold;
        for (int k = 0; k < 5; ++k) {
            const double t = u(rng) * top;
            REQUIRE(testing::oracle_same_partition(binarized_partition(ucm, t), threshold(h, t).labels()));
        }
    }
    const RegionHierarchy one = build_ucm(with_strengths(LabelMap(labels_from({{0, 1}, {0, 1}})), {{{0, 1}, 0.3}}));
    const BoundaryGrid g = to_ucm_grid(one);
    CHECK(g(0, 1) == 0.3);
    CHECK(g(2, 1) == 0.3);
}

TEST_CASE("hierarchy construction is validated")
{
    const LabelMap base(labels_from({{0, 1}}));
    const SparseBoundaries sb = SparseBoundaries::from_label_map(base);
    CHECK_NOTHROW(RegionHierarchy(base, {{0.1, 0, 1, 2}}, sb));
    CHECK_THROWS_AS(RegionHierarchy(base, {}, sb), ContractError);
    CHECK_THROWS_AS(RegionHierarchy(base, {{0.1, 0, 1, 3}}, sb), ContractError);
    CHECK_THROWS_AS(RegionHierarchy(base, {{0.1, 0, 0, 2}}, sb), ContractError);
    const LabelMap three(labels_from({{0, 1, 2}}));
    CHECK_THROWS_AS(RegionHierarchy(three, {{0.5, 0, 1, 3}, {0.2, 3, 2, 4}}, SparseBoundaries::from_label_map(three)),
                    ContractError);
}

TEST_CASE("combine_multiscale")
{
    const LabelMap base(labels_from({{0, 1}, {0, 1}}));
    const RegionHierarchy lo = build_ucm(with_strengths(base, {{{0, 1}, 0.2}}));
    const RegionHierarchy hi = build_ucm(with_strengths(base, {{{0, 1}, 0.6}}));
    const std::vector<RegionHierarchy> both{lo, hi};
    const RegionHierarchy mixed = combine_multiscale(both);
    REQUIRE(mixed.merges().size() == 1);
    CHECK(mixed.merges()[0].threshold == doctest::Approx(0.4).epsilon(1e-15));
    const std::vector<double> skew{3.0, 1.0};
    CHECK(combine_multiscale(both, skew).merges()[0].threshold == doctest::Approx(0.3));

    const std::vector<double> short_w{1.0};
    CHECK_THROWS_AS(combine_multiscale(both, short_w), ContractError);
    const std::vector<double> zero_w{0.0, 0.0};
    CHECK_THROWS_AS(combine_multiscale(both, zero_w), ContractError);
    const std::vector<double> neg_w{1.0, -1.0};
    CHECK_THROWS_AS(combine_multiscale(both, neg_w), ContractError);
    CHECK_THROWS_AS(combine_multiscale(std::span<const RegionHierarchy>{}), ContractError);

    testing::Rng rng(71);
    const RegionHierarchy h = random_hierarchy(rng, 20, 20);
    const std::vector<RegionHierarchy> single{h};
    const RegionHierarchy again = combine_multiscale(single);
    CHECK(again.merges() == build_ucm(from_boundary_grid(to_ucm_grid(h))).merges());
    CHECK(testing::oracle_same_partition(again.base().labels(), h.base().labels()));
}

TEST_CASE("combine_multiscale across resolutions")
{
    testing::Rng rng(72);
    const Raster<float> v = testing::random_contours(24, 16, rng);
    const RegionHierarchy fine = build_ucm(watershed(ContourMap(v)));
    const RegionHierarchy coarse = build_ucm(watershed(resample_nearest(ContourMap(v), 12, 8)));
    const std::vector<RegionHierarchy> both{coarse, fine};
    const RegionHierarchy c = combine_multiscale(both);
    CHECK(c.width() == 24);
    CHECK(c.height() == 16);
    for (std::size_t i = 1; i < c.merges().size(); ++i)
        CHECK(c.merges()[i].threshold >= c.merges()[i - 1].threshold);
}

TEST_CASE("resample_boundary_grid keeps a straight boundary")
{
    const LabelMap l(labels_from({{0, 1}, {0, 1}}));
    const BoundaryGrid g = to_ucm_grid(build_ucm(with_strengths(l, {{{0, 1}, 0.5}})));
    const BoundaryGrid up = resample_boundary_grid(g, 4, 4);
    for (int r = 0; r < 4; ++r)
        CHECK(up(2 * r, 3) == 0.5);
    CHECK(up(0, 1) == 0.0);
    CHECK(up(0, 5) == 0.0);
    const SparseBoundaries sb = from_boundary_grid(up);
    CHECK(sb.region_count() == 2);
}

TEST_CASE("hierarchy files round trip")
{
    const auto dir = testing::scratch_dir("hier_json");
    testing::Rng rng(90);
    const RegionHierarchy h = random_hierarchy(rng, 16, 12);
    write_hierarchy(h, dir / "h.json");
    const HierarchyFiles files = HierarchyFiles::beside(dir / "h.json");
    CHECK(std::filesystem::exists(files.base_pgm));
    CHECK(std::filesystem::exists(files.boundaries_json));
    const RegionHierarchy back = read_hierarchy(dir / "h.json");
    CHECK(back.base() == h.base());
    CHECK(back.merges() == h.merges());
    const nlohmann::json j = nlohmann::json::parse(std::ifstream(dir / "h.json"));
    CHECK(j.contains("base"));
    CHECK(j.contains("base_boundaries"));
    if (!h.merges().empty()) {
        CHECK(j["merges"][0].contains("t"));
        CHECK(j["merges"][0]["parent"] == h.base_region_count());
    }
    std::ofstream(dir / "broken.json") << "{\"base\": 3";
    CHECK_THROWS_AS(read_hierarchy(dir / "broken.json"), FormatError);
}

TEST_CASE("interpolate_bins")
{
    const double pi = std::numbers::pi;
    const std::vector<double> r{0.1, 0.2, 0.3, 0.4};
    CHECK(interpolate_bins(r, 0.5 * pi / 4) == 0.1);
    CHECK(interpolate_bins(r, 2.5 * pi / 4) == 0.3);
    CHECK(interpolate_bins(r, 1.0 * pi / 4) == doctest::Approx(0.15));
    // Between the last and the first bin, across the wrap at pi.
    CHECK(interpolate_bins(r, 0.0) == doctest::Approx(0.25));
    // 0.75 bin widths past T(4) - pi, 0.25 short of T(1).
    CHECK(interpolate_bins(r, 0.25 * pi / 4) == doctest::Approx(0.25 * 0.4 + 0.75 * 0.1));
}

TEST_CASE("owt_reweight examples")
{
    // A vertical boundary: angle pi/2, the central angle of bin 2 when K = 3.
    const LabelMap split(labels_from({{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}}));
    const SparseBoundaries sb = SparseBoundaries::from_label_map(split);
    std::vector<Raster<float>> three{Raster<float>::Constant(4, 4, 0.9f), Raster<float>::Constant(4, 4, 0.35f),
                                     Raster<float>::Constant(4, 4, 0.1f)};
    CHECK(owt_reweight(sb, BinStack(three), 3.0).segment({0, 1}).strength == static_cast<double>(0.35f));

    std::vector<Raster<float>> zeros(8, Raster<float>::Zero(4, 4));
    CHECK(owt_reweight(sb, BinStack(zeros), 3.0).segment({0, 1}).strength == 0.0);

    // pi/2 is the edge between bins 2 and 3 when K = 4.
    std::vector<Raster<float>> four{Raster<float>::Zero(4, 4), Raster<float>::Constant(4, 4, 0.4f),
                                    Raster<float>::Constant(4, 4, 0.8f), Raster<float>::Zero(4, 4)};
    CHECK(owt_reweight(sb, BinStack(four), 3.0).segment({0, 1}).strength ==
          doctest::Approx(0.5 * (static_cast<double>(0.4f) + static_cast<double>(0.8f))).epsilon(1e-12));

    // A horizontal boundary sits between bin K and bin 1.
    const LabelMap flat(labels_from({{0, 0, 0}, {1, 1, 1}}));
    std::vector<Raster<float>> eight(8, Raster<float>::Zero(2, 3));
    eight[0] = Raster<float>::Constant(2, 3, 0.8f);
    eight[7] = Raster<float>::Constant(2, 3, 0.4f);
    CHECK(owt_reweight(SparseBoundaries::from_label_map(flat), BinStack(eight), 3.0).segment({0, 1}).strength ==
          doctest::Approx(0.6).epsilon(1e-7));

    std::vector<Raster<float>> wrong(8, Raster<float>::Zero(3, 3));
    CHECK_THROWS_AS(owt_reweight(sb, BinStack(wrong), 3.0), ContractError);
}
