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

#include "sparseucm/bench.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <deque>
#include <random>
#include <unordered_set>

#include "sparseucm/dense_boundaries.hpp"
#include "sparseucm/hierarchy.hpp"

namespace sucm {

const char* to_string(Representation repr)
{
    return repr == Representation::sparse ? "sparse" : "dense";
}

SparseBoundaries make_bench_partition(int width, int height, int regions, std::uint64_t seed)
{
    if (width < 1 || height < 1)
        throw ContractError("bench: width and height must be >= 1");
    if (regions < 2)
        throw ContractError("bench: need at least 2 regions");
    if (static_cast<long>(regions) > static_cast<long>(width) * height)
        throw ContractError("bench: more regions than pixels");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(0, static_cast<long>(width) * height - 1);
    std::unordered_set<long> taken;
    Raster<std::int32_t> labels = Raster<std::int32_t>::Constant(height, width, -1);
    std::deque<PixelCoord> queue;
    while (static_cast<int>(taken.size()) < regions) {
        const long at = pick(rng);
        if (!taken.insert(at).second)
            continue;
        const PixelCoord p{static_cast<int>(at / width), static_cast<int>(at % width)};
        labels(p.row, p.col) = static_cast<std::int32_t>(taken.size() - 1);
        queue.push_back(p);
    }
    while (!queue.empty()) {
        const PixelCoord p = queue.front();
        queue.pop_front();
        const PixelCoord next[] = {{p.row - 1, p.col}, {p.row + 1, p.col}, {p.row, p.col - 1}, {p.row, p.col + 1}};
        for (const PixelCoord n : next) {
            if (n.row < 0 || n.col < 0 || n.row >= height || n.col >= width || labels(n.row, n.col) >= 0)
                continue;
            labels(n.row, n.col) = labels(p.row, p.col);
            queue.push_back(n);
        }
    }

    SparseBoundaries sb = SparseBoundaries::from_label_map(LabelMap(std::move(labels)));
    std::uniform_real_distribution<double> strength(0.0, 1.0);
    for (const auto& [pair, unused] : sb.segment_strengths())
        sb.set_strength(pair, strength(rng));
    return sb;
}

namespace {

std::string digest(const std::vector<MergeStep>& merges)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    for (const MergeStep& m : merges) {
        mix(std::bit_cast<std::uint64_t>(m.strength));
        mix(static_cast<std::uint64_t>(m.pair.a));
        mix(static_cast<std::uint64_t>(m.pair.b));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

template <typename Boundaries>
double timed_merge(Boundaries& boundaries, std::vector<MergeStep>& merges)
{
    const auto start = std::chrono::steady_clock::now();
    merge_ascending(boundaries, [&](double strength, RegionPair pair, const EraseResult&) {
        merges.push_back({strength, pair});
    });
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return std::max(elapsed.count(), 1e-9);
}

} // namespace

BenchReport run_bench(const BenchConfig& config)
{
    SparseBoundaries sb = make_bench_partition(config.width, config.height, config.regions, config.seed);
    BenchReport report;
    report.repr = config.repr;
    report.width = config.width;
    report.height = config.height;
    report.region_count = sb.region_count();
    report.merges.reserve(static_cast<std::size_t>(sb.region_count()));
    if (config.repr == Representation::sparse) {
        sb.reset_touched();
        report.merge_seconds = timed_merge(sb, report.merges);
        report.touched_cells = sb.touched();
    } else {
        DenseBoundaries dense(sb);
        report.merge_seconds = timed_merge(dense, report.merges);
        report.touched_cells = dense.touched();
    }
    report.merge_count = report.merges.size();
    report.merge_digest = digest(report.merges);
    return report;
}

nlohmann::json to_json(const BenchReport& report)
{
    return {{"repr", to_string(report.repr)},
            {"width", report.width},
            {"height", report.height},
            {"region_count", report.region_count},
            {"merge_seconds", report.merge_seconds},
            {"touched_cells", report.touched_cells},
            {"merge_count", report.merge_count},
            {"merge_digest", report.merge_digest}};
}

} // namespace sucm
