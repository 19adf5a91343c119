// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "reeb/types.hpp"

namespace reeb {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

enum class NodeKind { Min, Max, Saddle, BoundaryMin, BoundaryMax, Crossing };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

/// An embedding edge, stored as (lower-rank endpoint, higher-rank endpoint).
using EmbeddedEdge = std::array<VertexId, 2>;

struct ReebNode {
  NodeId id = kInvalid;
  NodeKind kind = NodeKind::Min;
  VertexId vertex = kInvalid;  ///< critical vertex, or kInvalid
  std::uint32_t loop = kInvalid;  ///< boundary loop (or cut cycle for crossing nodes)
  Rank level = 0;

  bool is_loop() const { return kind == NodeKind::BoundaryMin || kind == NodeKind::BoundaryMax; }
};

struct ReebArc {
  ArcId id = kInvalid;
  NodeId lo = kInvalid;
  NodeId hi = kInvalid;
  std::vector<EmbeddedEdge> embedding;
};

/// Multigraph of critical and boundary nodes; every arc carries the mesh
/// edges it was traced along.
class ReebGraph {
 public:
  NodeId add_node(NodeKind kind, VertexId vertex, std::uint32_t loop, Rank level);
  ArcId add_arc(NodeId lo, NodeId hi, std::vector<EmbeddedEdge> embedding);

  const std::vector<ReebNode>& nodes() const { return nodes_; }
  const std::vector<ReebArc>& arcs() const { return arcs_; }
  const ReebNode& node(NodeId n) const { return nodes_[n]; }
  const ReebArc& arc(ArcId a) const { return arcs_[a]; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }

  std::vector<std::uint32_t> degrees() const;
  std::size_t num_components() const;
  /// First Betti number: arcs - nodes + components.
  long betti1() const;

  /// Renumbers nodes by level and arcs by (lo, hi, first embedding edge) so
  /// that equal graphs serialize identically.
  void canonicalize();

  friend bool operator==(const ReebGraph&, const ReebGraph&);

 private:
  std::vector<ReebNode> nodes_;
  std::vector<ReebArc> arcs_;
};

bool operator==(const ReebNode& a, const ReebNode& b);
bool operator==(const ReebArc& a, const ReebArc& b);

nlohmann::json to_json(const ReebGraph& graph);
/// Throws InputError on malformed documents.
ReebGraph graph_from_json(const nlohmann::json& doc);
void write_dot(std::ostream& out, const ReebGraph& graph);

}  // namespace reeb
