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

#include "sparseucm/bench.hpp"
#include "sparseucm/hierarchy.hpp"
#include "test_support.hpp"

using namespace sucm;

TEST_CASE("bench partitions are compact, connected and seeded")
{
    const SparseBoundaries a = make_bench_partition(30, 20, 25, 4);
    const SparseBoundaries b = make_bench_partition(30, 20, 25, 4);
    CHECK(a.region_count() == 25);
    CHECK(a.base_labels() == b.base_labels());
    CHECK(a.segment_strengths() == b.segment_strengths());
    CHECK(testing::count_labels(testing::oracle_components(a.base_labels().labels())) == 25);
    a.validate();
    CHECK_FALSE(make_bench_partition(30, 20, 25, 5).base_labels() == a.base_labels());
    CHECK_THROWS_AS(make_bench_partition(4, 4, 1, 0), ContractError);
    CHECK_THROWS_AS(make_bench_partition(2, 2, 5, 0), ContractError);
    CHECK_THROWS_AS(make_bench_partition(0, 2, 2, 0), ContractError);
}

TEST_CASE("both representations merge identically")
{
    for (const std::uint64_t seed : {0u, 1u, 2u}) {
        BenchConfig config{40, 30, 60, Representation::sparse, seed};
        const BenchReport sparse = run_bench(config);
        config.repr = Representation::dense;
        const BenchReport dense = run_bench(config);
        CHECK(sparse.merge_count == 59);
        CHECK(sparse.merges == dense.merges);
        CHECK(sparse.merge_digest == dense.merge_digest);
        CHECK(sparse.touched_cells > 0);
        CHECK(sparse.touched_cells < dense.touched_cells);
        CHECK(sparse.merge_seconds > 0.0);
        // Same sequence as build_ucm before the running max is applied.
        const RegionHierarchy h = build_ucm(make_bench_partition(40, 30, 60, seed));
        double running = 0.0;
        for (std::size_t i = 0; i < h.merges().size(); ++i) {
            running = std::max(running, sparse.merges[i].strength);
            CHECK(h.merges()[i].threshold == running);
        }
    }
}

TEST_CASE("bench report JSON")
{
    const BenchReport r = run_bench({8, 8, 4, Representation::sparse, 0});
    const nlohmann::json j = to_json(r);
    for (const char* key :
         {"repr", "width", "height", "region_count", "merge_seconds", "touched_cells", "merge_count", "merge_digest"})
        CHECK(j.contains(key));
    CHECK(j["repr"] == "sparse");
    CHECK(j["region_count"] == 4);
    CHECK(nlohmann::json::parse(j.dump()) == j);
}
