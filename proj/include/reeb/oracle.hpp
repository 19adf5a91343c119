// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "reeb/mesh.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

/// Reeb graph without embeddings, built by sweeping every half-integer rank
/// level and tracking level-set components with union-find.
using SweepGraph = ReebGraph;

inline constexpr std::size_t kSweepVertexLimit = 50000;

/// Boundary loops are capped by virtual apexes placed just below (lower
/// loops) or just above (upper loops) the loop. A loop's side is decided
/// locally: lower when all its vertices rank below every neighboring
/// off-loop vertex, upper in the mirrored case. Throws InputError above
/// kSweepVertexLimit vertices and ValidationError for loops that are
/// neither.
SweepGraph sweep_reeb(const Mesh& mesh, const ScalarField& field);

/// counts[t] = number of level-set components at rank level t - 1/2, for
/// t in [1, N). counts[0] is 0. Computed by union-find over the straddling
/// edges of each level, without tracing.
std::vector<std::size_t> level_component_counts(const Mesh& mesh, const ScalarField& field);

struct IsoResult {
  bool isomorphic = false;
  std::string witness;  ///< summary on success, first mismatch otherwise
};

/// Compares node labels (source vertex or loop, level) and the multiset of
/// arcs between labels. Crossing nodes are not expected.
IsoResult graphs_isomorphic(const ReebGraph& a, const ReebGraph& b);

}  // namespace reeb
