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
#include <string>
#include <vector>

#include "json.hpp"

#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

enum class Representation { sparse, dense };

const char* to_string(Representation repr);

struct BenchConfig {
    int width = 64;
    int height = 64;
    int regions = 16;
    Representation repr = Representation::sparse;
    std::uint64_t seed = 0;
};

struct MergeStep {
    double strength = 0.0;
    RegionPair pair;

    bool operator==(const MergeStep&) const = default;
};

struct BenchReport {
    Representation repr = Representation::sparse;
    int width = 0;
    int height = 0;
    int region_count = 0;
    double merge_seconds = 0.0;
    std::uint64_t touched_cells = 0;
    std::size_t merge_count = 0;
    /// FNV-1a over (strength bits, a, b) of every merge, as 16 hex digits.
    std::string merge_digest;
    std::vector<MergeStep> merges;
};

/// Seeded Voronoi-like partition: `regions` distinct seed pixels grown by
/// breadth-first search (so every cell is 4-connected), with an independent
/// uniform strength in [0,1) per boundary segment.
SparseBoundaries make_bench_partition(int width, int height, int regions, std::uint64_t seed);

/// Merges the partition down to one region with the chosen representation,
/// timing only the merge loop.
BenchReport run_bench(const BenchConfig& config);

nlohmann::json to_json(const BenchReport& report);

} // namespace sucm
