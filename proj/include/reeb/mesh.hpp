// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "reeb/types.hpp"

namespace reeb {

/// Ordered link of a vertex. For an interior vertex the sequence is a cycle
/// (last connects back to first); at the boundary it is an open chain whose
/// two ends are the neighbors along the boundary.
struct LinkView {
  std::span<const VertexId> vertices;
  std::span<const EdgeId> spokes;  ///< spokes[i] is the edge (v, vertices[i])
  bool closed = true;
};

/// Indexed, validated, consistently oriented triangulated 2-manifold
/// (possibly with boundary, possibly disconnected). Immutable after build().
class Mesh {
 public:
  /// Validates and indexes. Throws ValidationError for out-of-range or
  /// repeated indices, edges with more than two faces, non-manifold
  /// vertices, and inconsistent or impossible orientation.
  static Mesh build(std::vector<Vec3> positions, std::vector<Triangle> faces);

  std::size_t num_vertices() const { return positions_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  const std::vector<Vec3>& positions() const { return positions_; }
  const std::vector<Triangle>& faces() const { return faces_; }
  const Triangle& face(FaceId f) const { return faces_[f]; }
  Vec3 position(VertexId v) const { return positions_[v]; }

  /// Endpoints with first < second.
  const std::array<VertexId, 2>& edge(EdgeId e) const { return edges_[e]; }
  /// Incident faces; second entry is kInvalid on boundary edges.
  const std::array<FaceId, 2>& edge_faces(EdgeId e) const { return edge_faces_[e]; }
  /// face_edges(f)[i] joins face(f)[i] and face(f)[(i+1)%3].
  const std::array<EdgeId, 3>& face_edges(FaceId f) const { return face_edges_[f]; }
  bool is_boundary_edge(EdgeId e) const { return edge_faces_[e][1] == kInvalid; }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  LinkView link(VertexId v) const;
  std::span<const FaceId> vertex_faces(VertexId v) const;
  bool is_boundary_vertex(VertexId v) const { return !link_closed_[v]; }

  /// Boundary cycles as vertex sequences following face orientation.
  const std::vector<std::vector<VertexId>>& boundary_loops() const { return loops_; }
  /// Loop index of a boundary vertex, kInvalid for interior vertices.
  std::uint32_t loop_of_vertex(VertexId v) const { return vertex_loop_[v]; }

  std::size_t num_components() const { return num_components_; }
  std::uint32_t component_of_vertex(VertexId v) const { return vertex_component_[v]; }

  long euler_characteristic() const;

 private:
  std::vector<Vec3> positions_;
  std::vector<Triangle> faces_;
  std::vector<std::array<VertexId, 2>> edges_;
  std::vector<std::array<FaceId, 2>> edge_faces_;
  std::vector<std::array<EdgeId, 3>> face_edges_;

  // CSR: link_offsets_[v] .. link_offsets_[v+1]
  std::vector<std::uint32_t> link_offsets_;
  std::vector<VertexId> link_vertices_;
  std::vector<EdgeId> link_spokes_;
  std::vector<std::uint8_t> link_closed_;
  std::vector<std::uint32_t> face_offsets_;
  std::vector<FaceId> vertex_faces_;

  std::vector<std::vector<VertexId>> loops_;
  std::vector<std::uint32_t> vertex_loop_;
  std::vector<std::uint32_t> vertex_component_;
  std::size_t num_components_ = 0;
};

/// Flips faces in place so that shared edges are traversed in opposite
/// directions. Returns false when no consistent orientation exists.
/// Faces must already form a manifold (at most two faces per edge).
bool orient_consistently(std::vector<Triangle>& faces, std::size_t num_vertices);

}  // namespace reeb
