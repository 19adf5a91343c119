// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "reeb/levelset.hpp"
#include "reeb/mesh.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

/// A point of the graph: either a node, or parameter t in (0,1) along an arc
/// (0 = lower node, 1 = upper node).
struct GraphPoint {
  ArcId arc = kInvalid;
  double t = 0.5;
  NodeId node = kInvalid;

  static GraphPoint on_arc(ArcId a, double t) { return {a, t, kInvalid}; }
  static GraphPoint at_node(NodeId n) { return {kInvalid, 0.0, n}; }
  bool is_node() const { return node != kInvalid; }
};

/// Level-set component of an interior graph point, with a polyline for export.
struct EmbeddedCircle {
  LevelCycle cycle;
  double level = 0.0;        ///< interpolated real value
  EdgeId seed = kInvalid;    ///< embedding edge the cycle was traced from
  ArcId arc = kInvalid;
  double t = 0.0;
  std::vector<Vec3> polyline;  ///< one point per crossing edge
};

/// Prefix sums of |f(v_i) - f(v_{i+1})| along a vertex path. Segments shorter
/// than delta are lengthened to delta. Throws InputError when the total
/// length is zero.
std::vector<double> arc_length_table(const std::vector<double>& values, double delta = 0.0);

/// Vertex path v_1 .. v_{n+1} of an arc's embedding.
std::vector<VertexId> embedding_path(const ReebArc& arc);

/// Table over an arc's embedding with delta = (field range) * 1e-12.
std::vector<double> arc_length_table(const ReebArc& arc, const ScalarField& field);

/// Throws InputError for node points, t outside (0,1), unknown arcs and
/// arcs without embedding.
EmbeddedCircle point_to_circle(const ReebGraph& graph, const Mesh& mesh, const ScalarField& field,
                               const GraphPoint& p);

/// Point at fraction s of the summed reparametrized length of a chain of
/// arcs. Throws InputError for an empty chain or s outside (0,1).
GraphPoint point_on_chain(const ReebGraph& graph, const ScalarField& field,
                          const std::vector<ArcId>& chain, double s);

/// The set a node stands for: a critical set, or a boundary loop given as
/// its vertices and the cycle of loop edges.
struct NodeSet {
  NodeId node = kInvalid;
  std::optional<CriticalSet> critical;
  std::vector<VertexId> loop_vertices;
  std::vector<EdgeId> loop_edges;
};

/// Throws InputError for unknown or crossing nodes.
NodeSet node_to_set(const ReebGraph& graph, const Mesh& mesh, const ScalarField& field,
                    NodeId node);

/// Point where the edge meets the real level, clamped to the edge.
Vec3 crossing_point(const Mesh& mesh, const ScalarField& field, EdgeId e, double level);

}  // namespace reeb
