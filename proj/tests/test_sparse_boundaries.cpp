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

#include "sparseucm/dense_boundaries.hpp"
#include "sparseucm/serialization.hpp"
#include "sparseucm/sparse_boundaries.hpp"
#include "test_support.hpp"

using namespace sucm;
using sucm::testing::labels_from;

namespace {

const LabelMap& fig2()
{
    static const LabelMap l(labels_from({{0, 0, 1}, {0, 2, 2}}));
    return l;
}

// Junction rule computed straight from the grid: max of the active incident
// edgels when at least two are active.
double oracle_junction(const Raster<double>& g, int r, int c)
{
    int active = 0;
    double best = 0.0;
    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};
    for (int i = 0; i < 4; ++i) {
        const int rr = r + dr[i];
        const int cc = c + dc[i];
        if (rr < 0 || cc < 0 || rr >= g.rows() || cc >= g.cols() || g(rr, cc) <= 0.0)
            continue;
        ++active;
        best = std::max(best, g(rr, cc));
    }
    return active >= 2 ? best : 0.0;
}

void check_matches_labels(const SparseBoundaries& sb)
{
    sb.validate();
    const auto expected = testing::oracle_adjacency(sb.labels().labels());
    REQUIRE(sb.segment_count() == expected.size());
    const LabelMap current = sb.labels();
    for (const BoundarySegment& s : sb.segments()) {
        // Every edgel separates the segment's two regions.
        const auto [p, q] = edgel_pixels(s.edgels.front());
        const int lp = current(p.row, p.col);
        const int lq = current(q.row, q.col);
        REQUIRE(lp != lq);
        const auto it = expected.find({std::min(lp, lq), std::max(lp, lq)});
        REQUIRE(it != expected.end());
        REQUIRE(static_cast<int>(s.edgels.size()) == it->second);
    }
}

} // namespace

TEST_CASE("from_label_map on the three-region example")
{
    const SparseBoundaries sb = SparseBoundaries::from_label_map(fig2());
    CHECK(sb.region_count() == 3);
    CHECK(sb.segment_count() == 3);
    CHECK(sb.segment({0, 1}).edgels.size() == 1);
    CHECK(sb.segment({0, 2}).edgels.size() == 2);
    CHECK(sb.segment({1, 2}).edgels.size() == 1);
    CHECK(sb.segment({0, 1}).edgels.front() == EdgelCoord{0, 3});
    CHECK(sb.segment({0, 1}).strength == 0.0);
    CHECK(sb.edgel_count() == 4);
    CHECK(sb.neighbors(0) == std::set<int>{1, 2});
    CHECK_THROWS_AS(sb.segment({1, 5}), ContractError);
}

TEST_CASE("from_label_map degenerate inputs and the adjacency oracle")
{
    CHECK(SparseBoundaries::from_label_map(LabelMap(Raster<std::int32_t>::Zero(4, 5))).segment_count() == 0);

    Raster<std::int32_t> row(1, 7);
    for (int i = 0; i < 7; ++i)
        row(0, i) = i;
    const SparseBoundaries line = SparseBoundaries::from_label_map(LabelMap(row));
    CHECK(line.segment_count() == 6);
    for (const BoundarySegment& s : line.segments())
        CHECK(s.edgels.size() == 1);

    CHECK_THROWS_AS(SparseBoundaries::from_label_map(LabelMap(labels_from({{0, 2}}))), ContractError);

    testing::Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const LabelMap l(testing::random_partition(12, 9, rng));
        const SparseBoundaries sb = SparseBoundaries::from_label_map(l);
        check_matches_labels(sb);
        std::size_t discontinuities = 0;
        for (const auto& [pair, n] : testing::oracle_adjacency(l.labels()))
            discontinuities += static_cast<std::size_t>(n);
        CHECK(sb.edgel_count() == discontinuities);
    }
}

TEST_CASE("to_boundary_grid placement")
{
    SparseBoundaries sb = SparseBoundaries::from_label_map(fig2());
    for (const auto& [pair, s] : sb.segment_strengths())
        sb.set_strength(pair, 0.5);
    const BoundaryGrid g = to_boundary_grid(sb);
    REQUIRE(g.rows() == 3);
    REQUIRE(g.cols() == 5);
    int edgels = 0;
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            if (is_edgel_position(r, c) && g(r, c) != 0.0) {
                CHECK(g(r, c) == 0.5);
                ++edgels;
            }
            if (is_junction_position(r, c))
                CHECK(g(r, c) == oracle_junction(g.cells(), r, c));
            if (!is_edgel_position(r, c) && !is_junction_position(r, c))
                CHECK(g(r, c) == 0.0);
        }
    }
    CHECK(edgels == 4);
    // Both interior junctions meet two or more active edgels.
    CHECK(g(1, 1) == 0.5);
    CHECK(g(1, 3) == 0.5);

    CHECK((to_boundary_grid(SparseBoundaries::from_label_map(LabelMap(Raster<std::int32_t>::Zero(2, 2))))
               .cells() == 0.0)
              .all());

    SparseBoundaries pair = SparseBoundaries::from_label_map(LabelMap(labels_from({{0, 1}})));
    pair.set_strength({0, 1}, 0.7);
    const BoundaryGrid pg = to_boundary_grid(pair);
    CHECK(pg.cols() == 3);
    CHECK(pg(0, 1) == 0.7);
    CHECK(pg(0, 0) == 0.0);
    CHECK(pg(0, 2) == 0.0);
}

TEST_CASE("from_boundary_grid")
{
    const SparseBoundaries empty = from_boundary_grid(BoundaryGrid::zeros(6, 4));
    CHECK(empty.region_count() == 1);
    CHECK(empty.segment_count() == 0);

    testing::Rng rng(2);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const LabelMap l(testing::random_partition(16, 16, rng));
        SparseBoundaries sb = SparseBoundaries::from_label_map(l);
        std::map<RegionPair, double> set;
        for (const auto& [pair, s] : sb.segment_strengths()) {
            set[pair] = u(rng);
            sb.set_strength(pair, set[pair]);
        }
        const SparseBoundaries back = from_boundary_grid(to_boundary_grid(sb));
        REQUIRE(testing::oracle_same_partition(back.base_labels().labels(), l.labels()));
        back.validate();
        // Strengths come back as the per-segment max, which is the value set.
        std::map<int, int> rename;
        for (int r = 0; r < l.height(); ++r)
            for (int c = 0; c < l.width(); ++c)
                rename[back.base_labels()(r, c)] = l(r, c);
        for (const BoundarySegment& s : back.segments())
            REQUIRE(s.strength == set.at(RegionPair::of(rename[s.region_a], rename[s.region_b])));
    }

    // An active edgel with the same region on both sides is dropped.
    BoundaryGrid g = BoundaryGrid::zeros(3, 3);
    g.set(0, 1, 0.9);
    const SparseBoundaries dangling = from_boundary_grid(g);
    CHECK(dangling.region_count() == 1);
    CHECK(dangling.segment_count() == 0);
}

TEST_CASE("erase_segment")
{
    SparseBoundaries sb = SparseBoundaries::from_label_map(fig2());
    sb.set_strength({0, 1}, 0.2);
    sb.set_strength({1, 2}, 0.8);
    const EraseResult res = sb.erase_segment({0, 2});
    CHECK(res.survivor == 0);
    CHECK(res.absorbed == 2);
    CHECK(sb.region_count() == 2);
    CHECK(sb.segment_count() == 1);
    const BoundarySegment& merged = sb.segment({0, 1});
    CHECK(merged.edgels.size() == 2);
    CHECK(merged.strength == doctest::Approx(0.5));
    REQUIRE(res.removed.size() == 2);
    CHECK(res.removed[0] == RegionPair{0, 2});
    CHECK(res.removed[1] == RegionPair{1, 2});
    REQUIRE(res.updated.size() == 1);
    CHECK(res.updated[0].first == RegionPair{0, 1});
    check_matches_labels(sb);
    // Oracle: recompute from the merged label map.
    const SparseBoundaries fresh = SparseBoundaries::from_label_map(sb.labels());
    CHECK(fresh.segment({0, 1}).edgels.size() == 2);

    CHECK_THROWS_AS(sb.erase_segment({0, 2}), ContractError);
    CHECK_THROWS_AS(sb.set_strength({1, 2}, 0.3), ContractError);
    sb.erase_segment({0, 1});
    CHECK(sb.region_count() == 1);
    CHECK(sb.segment_count() == 0);
}

TEST_CASE("set_strength")
{
    SparseBoundaries sb = SparseBoundaries::from_label_map(fig2());
    sb.set_strength({0, 2}, 0.7);
    CHECK(sb.segment({0, 2}).strength == 0.7);
    CHECK(sb.segment({0, 1}).strength == 0.0);
    CHECK_THROWS_AS(sb.set_strength({0, 2}, -1.0), ContractError);
    const BoundaryGrid g = to_boundary_grid(sb);
    for (const EdgelCoord e : sb.segment({0, 2}).edgels)
        CHECK(g(e.grid_row, e.grid_col) == 0.7);
}

TEST_CASE("merged_strength is exact on equal inputs")
{
    CHECK(merged_strength(0.3, 3, 0.3, 7) == 0.3);
    CHECK(merged_strength(0.0, 1, 1.0, 3) == doctest::Approx(0.75));
}

TEST_CASE("random erase sequences keep the invariants and the touch bound")
{
    testing::Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        SparseBoundaries sb = SparseBoundaries::from_label_map(LabelMap(testing::random_partition(14, 11, rng)));
        DenseBoundaries dense(sb);
        while (sb.segment_count() > 0) {
            const auto all = sb.segment_strengths();
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            const RegionPair pair = all[pick(rng)].first;
            std::size_t incident = 0;
            for (const int side : {pair.a, pair.b})
                for (const int n : sb.neighbors(side))
                    incident += sb.segment(RegionPair::of(side, n)).edgels.size();
            sb.reset_touched();
            const EraseResult s = sb.erase_segment(pair);
            const EraseResult d = dense.erase_segment(pair);
            REQUIRE(sb.touched() <= incident + 1);
            REQUIRE(s.survivor == d.survivor);
            REQUIRE(s.removed == d.removed);
            REQUIRE(s.updated == d.updated);
            check_matches_labels(sb);
            REQUIRE(sb.labels() == dense.labels());
        }
    }
}

TEST_CASE("compacted renumbers live regions")
{
    SparseBoundaries sb = SparseBoundaries::from_label_map(fig2());
    sb.erase_segment({0, 1});
    const SparseBoundaries c = sb.compacted();
    CHECK(c.region_count() == 2);
    CHECK(c.base_labels().label_bound() == 2);
    CHECK(c.segment({0, 1}).edgels.size() == 3);
    c.validate();
}

TEST_CASE("explicit construction validates")
{
    const LabelMap l(labels_from({{0, 1}}));
    BoundarySegment ok{0, 1, 0.5, {EdgelCoord{0, 1}}};
    CHECK_NOTHROW(SparseBoundaries(l, {ok}));
    CHECK_THROWS_AS(SparseBoundaries(l, {}), ContractError);
    BoundarySegment flipped{1, 0, 0.5, {EdgelCoord{0, 1}}};
    CHECK_THROWS_AS(SparseBoundaries(l, {flipped}), ContractError);
    BoundarySegment negative{0, 1, -0.5, {EdgelCoord{0, 1}}};
    CHECK_THROWS_AS(SparseBoundaries(l, {negative}), ContractError);
}

TEST_CASE("sparse boundaries JSON round trip")
{
    const auto dir = testing::scratch_dir("sb_json");
    SparseBoundaries sb = SparseBoundaries::from_label_map(fig2());
    sb.set_strength({0, 2}, 0.25);
    sb.set_strength({1, 2}, 0.125);
    write_sparse_boundaries(sb, dir / "sb.json", dir / "sb.pgm");
    const SparseBoundaries back = read_sparse_boundaries(dir / "sb.json");
    CHECK(back.base_labels() == sb.base_labels());
    const auto a = back.segments();
    const auto b = sb.segments();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].pair() == b[i].pair());
        CHECK(a[i].strength == b[i].strength);
        CHECK(a[i].edgels == b[i].edgels);
    }
    const nlohmann::json j = nlohmann::json::parse(std::ifstream(dir / "sb.json"));
    CHECK(j["labels"] == "sb.pgm");
    CHECK(j["width"] == 3);
    CHECK(j["segments"][0]["a"] == 0);
    CHECK(j["segments"][0]["b"] == 1);

    std::ofstream(dir / "bad.json") << "{\"width\": 3}";
    CHECK_THROWS_AS(read_sparse_boundaries(dir / "bad.json"), FormatError);
}
