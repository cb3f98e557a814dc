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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "sparseucm/hierarchy.hpp"
#include "sparseucm/orientation.hpp"
#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

/// {width, height, labels, segments: [{a, b, strength, edgels: [[gr, gc], ...]}]}
/// with segments sorted by (a, b). `labels_ref` is stored verbatim.
nlohmann::json sparse_boundaries_to_json(const SparseBoundaries& boundaries, const std::string& labels_ref);

/// Writes `json_path` and the label PGM it references. The reference is the
/// PGM file name, resolved against the JSON's directory when read back.
void write_sparse_boundaries(const SparseBoundaries& boundaries, const std::filesystem::path& json_path,
                             const std::filesystem::path& labels_path);
SparseBoundaries read_sparse_boundaries(const std::filesystem::path& json_path);

/// Sidecar names next to a hierarchy JSON `<stem>.json`.
struct HierarchyFiles {
    std::filesystem::path json;
    std::filesystem::path base_pgm;
    std::filesystem::path boundaries_json;
    std::filesystem::path ucm_pfm;

    static HierarchyFiles beside(const std::filesystem::path& json_path);
};

/// {base, merges: [{t, a, b, parent}], base_boundaries}; merges in execution
/// order. Also writes the base PGM and the boundaries JSON.
void write_hierarchy(const RegionHierarchy& hierarchy, const std::filesystem::path& json_path);
RegionHierarchy read_hierarchy(const std::filesystem::path& json_path);

/// CSV `grid_row,grid_col,bin` with a header line.
void write_gt_labels_csv(const GtOrientationLabels& labels, const std::filesystem::path& path);
GtOrientationLabels read_gt_labels_csv(const std::filesystem::path& path);

/// CSV `percentile,accuracy` with a header line.
void write_curve_csv(const OrientationCurve& curve, const std::filesystem::path& path);

/// Reads a JSON list of numbers.
std::vector<double> read_weights_json(const std::filesystem::path& path);

/// Writes text with the trailing newline JSON outputs carry.
void write_json_file(const nlohmann::json& value, const std::filesystem::path& path);

} // namespace sucm
