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

#include <map>
#include <span>
#include <vector>

#include "sparseucm/sparse_boundaries.hpp"

namespace sucm {

/// A maximal connected run of edgels, ordered along the boundary. Junction i
/// and i+1 are the end points of edgel i; closed runs repeat the first
/// junction at the end.
struct BoundaryTrace {
    std::vector<GridPoint> junctions;
    std::vector<EdgelCoord> edgels;
    bool closed = false;
};

/// Splits an edgel set into runs that stop at branch points and free ends.
/// Runs start from the smallest end or branch junction; pure loops start from
/// their smallest junction. Deterministic for a given edgel set.
std::vector<BoundaryTrace> trace_boundary(std::span<const EdgelCoord> edgels);

struct PolygonChain {
    /// Kept junctions, in grid coordinates.
    std::vector<GridPoint> vertices;
    /// Undirected angle of each polygon side, in [0, pi).
    std::vector<double> segment_angles;
    /// The run this chain approximates.
    BoundaryTrace trace;
    /// For each trace edgel, the index of the polygon side spanning it.
    std::vector<int> edgel_side;
};

/// Undirected angle of the direction from `from` to `to`, x along columns,
/// y along rows.
double direction_angle(GridPoint from, GridPoint to);

/// Recursive farthest-point splitting: a side is split at its farthest trace
/// junction while that distance (in pixels) exceeds `tol`, taking the
/// earliest junction on ties. tol = 0 keeps every junction.
PolygonChain simplify_trace(const BoundaryTrace& trace, double tol);

/// One chain per connected run of every segment.
std::map<RegionPair, std::vector<PolygonChain>> simplify_to_polygons(const SparseBoundaries& boundaries,
                                                                     double tol);

/// Euclidean distance in pixels from an edgel midpoint to side `side` of
/// `chain`.
double distance_to_side(const PolygonChain& chain, int side, EdgelCoord edgel);

} // namespace sucm
