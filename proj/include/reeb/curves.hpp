// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "reeb/augmented.hpp"
#include "reeb/mesh.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

inline constexpr double kCurveParameter = 0.5;
inline constexpr double kBranchOffset = 0.25;

/// One circle per arc outside a breadth-first spanning forest grown from the
/// lowest node of each component. Returns Betti_1(graph) circles.
std::vector<EmbeddedCircle> cutting_system(const ReebGraph& graph, const Mesh& mesh,
                                           const ScalarField& field,
                                           double t = kCurveParameter);

struct RetractEdge {
  NodeId a = kInvalid;  ///< original node ids
  NodeId b = kInvalid;
  std::vector<ArcId> chain;  ///< original arcs walked from a to b
};

/// Graph left after pruning leaves (except boundary nodes) and smoothing
/// valence-2 nodes.
struct RetractGraph {
  std::vector<NodeId> nodes;
  std::vector<RetractEdge> edges;

  std::size_t degree(NodeId n) const;
  long betti1() const;
  bool empty() const { return nodes.empty(); }
};

RetractGraph deformation_retract(const ReebGraph& graph);

/// Midpoint circle of every retract edge whose endpoints both have valence
/// other than one.
std::vector<EmbeddedCircle> pants_curves(const ReebGraph& graph, const Mesh& mesh,
                                         const ScalarField& field);

/// One circle per arc with a leaf endpoint that is not a boundary node, taken
/// `offset` away from the arc's interior end.
std::vector<EmbeddedCircle> branch_curves(const ReebGraph& graph, const Mesh& mesh,
                                          const ScalarField& field,
                                          double offset = kBranchOffset);

struct SegmentCensus {
  long chi = 0;
  std::size_t boundaries = 0;
  std::size_t faces = 0;
};

struct Segmentation {
  Mesh mesh;                           ///< the cut surface
  std::vector<double> values;          ///< rank-valued field on the cut surface
  std::vector<FaceId> origin_face;     ///< per cut face: face of the input mesh
  std::vector<std::uint32_t> labels;   ///< per cut face: segment id
  std::vector<SegmentCensus> segments;
  std::size_t circles = 0;
};

/// Splits the mesh along each circle. The cut surface carries a field in
/// which every input vertex keeps its rank and each circle's new vertices sit
/// at the circle's half-integer level. Throws InputError when two circles
/// lie on the same level component.
Segmentation cut_mesh(const Mesh& mesh, const ScalarField& field,
                      const std::vector<EmbeddedCircle>& circles);

}  // namespace reeb
