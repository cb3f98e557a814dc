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

#include "sparseucm/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sparseucm/netpbm.hpp"

namespace sucm {

using nlohmann::json;

namespace {

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path& json_path, const std::string& ref)
{
    const std::filesystem::path p(ref);
    return p.is_absolute() ? p : json_path.parent_path() / p;
}

std::filesystem::path with_suffix(const std::filesystem::path& json_path, const std::string& suffix)
{
    std::filesystem::path out = json_path;
    out.replace_filename(json_path.stem().string() + suffix);
    return out;
}

} // namespace

json sparse_boundaries_to_json(const SparseBoundaries& boundaries, const std::string& labels_ref)
{
    json segments = json::array();
    for (const BoundarySegment& s : boundaries.segments()) {
        json edgels = json::array();
        for (const EdgelCoord e : s.edgels)
            edgels.push_back({e.grid_row, e.grid_col});
        segments.push_back({{"a", s.region_a}, {"b", s.region_b}, {"strength", s.strength}, {"edgels", std::move(edgels)}});
    }
    return {{"width", boundaries.width()},
            {"height", boundaries.height()},
            {"labels", labels_ref},
            {"segments", std::move(segments)}};
}

void write_json_file(const json& value, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out << value.dump() << '\n';
    if (!out)
        throw FormatError("write failed for " + path.string());
}

void write_sparse_boundaries(const SparseBoundaries& boundaries, const std::filesystem::path& json_path,
                             const std::filesystem::path& labels_path)
{
    // Re-compact so ids match the written label map.
    const SparseBoundaries compact = boundaries.compacted();
    write_pgm(compact.base_labels(), labels_path, 16);
    write_json_file(sparse_boundaries_to_json(compact, labels_path.filename().string()), json_path);
}

SparseBoundaries read_sparse_boundaries(const std::filesystem::path& json_path)
{
    const json doc = read_json_file(json_path);
    try {
        LabelMap labels = read_pgm_labels(resolve(json_path, doc.at("labels").get<std::string>()), false);
        if (labels.width() != doc.at("width").get<int>() || labels.height() != doc.at("height").get<int>())
            throw FormatError(json_path.string() + ": label map size does not match width/height");
        std::vector<BoundarySegment> segments;
        for (const json& s : doc.at("segments")) {
            BoundarySegment seg;
            seg.region_a = s.at("a").get<int>();
            seg.region_b = s.at("b").get<int>();
            seg.strength = s.at("strength").get<double>();
            for (const json& e : s.at("edgels"))
                seg.edgels.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
            segments.push_back(std::move(seg));
        }
        return SparseBoundaries(std::move(labels), std::move(segments));
    } catch (const json::exception& e) {
        throw FormatError(json_path.string() + ": " + e.what());
    } catch (const ContractError& e) {
        throw FormatError(json_path.string() + ": " + e.what());
    }
}

HierarchyFiles HierarchyFiles::beside(const std::filesystem::path& json_path)
{
    return {json_path, with_suffix(json_path, ".base.pgm"), with_suffix(json_path, ".boundaries.json"),
            with_suffix(json_path, ".ucm.pfm")};
}

void write_hierarchy(const RegionHierarchy& hierarchy, const std::filesystem::path& json_path)
{
    const HierarchyFiles files = HierarchyFiles::beside(json_path);
    write_pgm(hierarchy.base(), files.base_pgm, 16);
    write_json_file(sparse_boundaries_to_json(hierarchy.base_boundaries(), files.base_pgm.filename().string()),
                    files.boundaries_json);
    json merges = json::array();
    for (const Merge& m : hierarchy.merges())
        merges.push_back({{"t", m.threshold}, {"a", m.child_a}, {"b", m.child_b}, {"parent", m.parent}});
    write_json_file({{"base", files.base_pgm.filename().string()},
                     {"merges", std::move(merges)},
                     {"base_boundaries", files.boundaries_json.filename().string()}},
                    json_path);
}

RegionHierarchy read_hierarchy(const std::filesystem::path& json_path)
{
    const json doc = read_json_file(json_path);
    try {
        LabelMap base = read_pgm_labels(resolve(json_path, doc.at("base").get<std::string>()), false);
        SparseBoundaries boundaries =
            read_sparse_boundaries(resolve(json_path, doc.at("base_boundaries").get<std::string>()));
        std::vector<Merge> merges;
        for (const json& m : doc.at("merges"))
            merges.push_back({m.at("t").get<double>(), m.at("a").get<int>(), m.at("b").get<int>(),
                              m.at("parent").get<int>()});
        if (!(boundaries.base_labels() == base))
            throw FormatError(json_path.string() + ": base boundaries use a different label map");
        return RegionHierarchy(std::move(base), std::move(merges), std::move(boundaries));
    } catch (const json::exception& e) {
        throw FormatError(json_path.string() + ": " + e.what());
    } catch (const ContractError& e) {
        throw FormatError(json_path.string() + ": " + e.what());
    }
}

void write_gt_labels_csv(const GtOrientationLabels& labels, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out << "grid_row,grid_col,bin\n";
    for (const GtEdgelLabel& e : labels.entries)
        out << e.edgel.grid_row << ',' << e.edgel.grid_col << ',' << e.bin << '\n';
    if (!out)
        throw FormatError("write failed for " + path.string());
}

GtOrientationLabels read_gt_labels_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path.string());
    GtOrientationLabels labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || (line_no == 1 && line == "grid_row,grid_col,bin"))
            continue;
        std::istringstream fields(line);
        GtEdgelLabel e;
        char c1 = 0;
        char c2 = 0;
        if (!(fields >> e.edgel.grid_row >> c1 >> e.edgel.grid_col >> c2 >> e.bin) || c1 != ',' || c2 != ',')
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected grid_row,grid_col,bin");
        if (!e.edgel.is_valid())
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": not an edgel position");
        labels.entries.push_back(e);
    }
    return labels;
}

void write_curve_csv(const OrientationCurve& curve, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out << "percentile,accuracy\n";
    char buf[64];
    for (std::size_t i = 0; i < curve.accuracy.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.12g\n", i + 1, curve.accuracy[i]);
        out << buf;
    }
    if (!out)
        throw FormatError("write failed for " + path.string());
}

std::vector<double> read_weights_json(const std::filesystem::path& path)
{
    const json doc = read_json_file(path);
    try {
        return doc.get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw FormatError(path.string() + ": expected a JSON list of numbers: " + e.what());
    }
}

} // namespace sucm
