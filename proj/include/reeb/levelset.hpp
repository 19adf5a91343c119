// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "reeb/mesh.hpp"
#include "reeb/morse.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

/// Simplices meeting a level set.
struct CrossSimplices {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::vector<FaceId> faces;
};

/// Vertices and edges of the closed cross-simplex band that lie on one side
/// of (or on) a vertex level.
struct LevelPart {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

/// One connected component of a regular level set, as the cyclic sequence
/// of mesh edges it crosses. Consecutive edges share a face. The sequence
/// is open only when the component runs into the boundary.
struct LevelCycle {
  RankLevel level;
  std::vector<EdgeId> edges;
  bool closed = true;
};

/// CR_f(t) for a real t. When t equals the value of one or more vertices the
/// level is taken through the lowest-ranked of them (see the vertex
/// overload); otherwise it lies strictly between two ranks.
/// Throws InputError when t is outside [min value, max value].
CrossSimplices cross_simplices(const Mesh& mesh, const ScalarField& field, double t);

/// CR_f(t_v): the level through exactly vertex v under the rank order.
CrossSimplices cross_simplices(const Mesh& mesh, const ScalarField& field, VertexId v);

/// Simplices crossing a half-integer rank level (never contains vertices).
CrossSimplices cross_simplices(const Mesh& mesh, const ScalarField& field, RankLevel level);

/// Closure of CR_f(t_v) together with the closed star of v.
CrossSimplices closed_cross_simplices(const Mesh& mesh, const ScalarField& field, VertexId v);

/// L(cl CR_f(t_v)): vertices/edges of the closed band with rank <= rank(v).
LevelPart lower_level(const Mesh& mesh, const ScalarField& field, VertexId v);
/// H(cl CR_f(t_v)): vertices/edges of the closed band with rank >= rank(v).
LevelPart higher_level(const Mesh& mesh, const ScalarField& field, VertexId v);

/// Walks face by face from `seed` around its level-set component.
/// Throws InputError when seed does not straddle the level.
LevelCycle trace_level_cycle(const Mesh& mesh, const ScalarField& field, EdgeId seed,
                             RankLevel level);
/// Real-valued convenience: the level just below t (vertices with value
/// >= t count as above).
LevelCycle trace_level_cycle(const Mesh& mesh, const ScalarField& field, EdgeId seed, double t);

/// Every component of the level, each traced once from its lowest edge id.
std::vector<LevelCycle> level_cycles(const Mesh& mesh, const ScalarField& field,
                                     RankLevel level);

/// One piece of a critical set: the level component just below the critical
/// value that passes through the star of the critical vertex.
struct CriticalSetComponent {
  std::vector<EdgeId> crossing_edges;  ///< empty for the singleton {p}
  std::vector<VertexId> lower_link;    ///< lower link vertices of p on this piece
};

struct CriticalSet {
  VertexId vertex = kInvalid;
  VertexKind kind = VertexKind::Regular;
  std::vector<CriticalSetComponent> components;
};

/// Minima and maxima yield the single component {p}. A saddle yields one
/// component per distinct level cycle at rank(p) - 1/2 through its lower
/// link. Throws InputError when p is not critical.
CriticalSet critical_set(const Mesh& mesh, const ScalarField& field, VertexId p);
CriticalSet critical_set(const Mesh& mesh, const ScalarField& field, VertexId p, VertexKind kind);

}  // namespace reeb
