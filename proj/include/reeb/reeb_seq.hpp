// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <unordered_map>
#include <vector>

#include "reeb/levelset.hpp"
#include "reeb/mesh.hpp"
#include "reeb/morse.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

/// Critical sets of every critical point, flattened so each component has
/// a global id, plus the edge -> component lookup used to stop paths.
struct TerminationIndex {
  std::vector<CriticalSet> sets;                 ///< per inventory slot
  std::vector<std::uint32_t> component_offset;   ///< slot -> first component id (size slots+1)
  std::vector<std::uint32_t> slot_of_component;
  /// Crossing edge -> component ids whose level cycle contains it, ascending
  /// by critical rank.
  std::unordered_map<EdgeId, std::vector<std::uint32_t>> lookup;

  std::size_t num_components() const { return slot_of_component.size(); }
};

/// Critical sets are computed independently per critical point and may fan
/// out over `workers` threads.
TerminationIndex build_termination_index(const Mesh& mesh, const ScalarField& field,
                                         const CriticalInventory& inventory,
                                         unsigned workers = 1);

/// Node ids of the final graph before canonicalization: criticals first (in
/// rank order), then boundary loops, then (parallel only) crossing nodes.
struct NodeLayout {
  std::size_t criticals = 0;
  std::size_t loops = 0;

  NodeId critical(std::size_t slot) const { return static_cast<NodeId>(slot); }
  NodeId loop(std::uint32_t l) const { return static_cast<NodeId>(criticals + l); }
  /// side 0: where a lower slab's path ends; side 1: where the upper slab's path starts.
  NodeId crossing(std::uint32_t cycle, int side) const {
    return static_cast<NodeId>(criticals + loops + 2 * cycle + side);
  }
};

/// Shared read-only state for marching. Vertices with rank in
/// [window_lo, window_hi) form the active slab; the sequential engine uses
/// the whole rank range.
struct EngineView {
  const Mesh* mesh = nullptr;
  const ScalarField* field = nullptr;
  const CriticalInventory* inventory = nullptr;
  const BoundaryReport* boundary = nullptr;
  const TerminationIndex* index = nullptr;
  NodeLayout layout;
  Rank window_lo = 0;
  Rank window_hi = 0;
  /// Crossing edge -> cycle id at the cut window_hi - 1/2 (parallel only).
  const std::unordered_map<EdgeId, std::uint32_t>* upper_cut = nullptr;

  static EngineView whole(const Mesh& mesh, const ScalarField& field,
                          const CriticalInventory& inventory, const BoundaryReport& boundary,
                          const TerminationIndex& index);
};

enum class TerminalKind { None, Critical, Loop, Crossing };

/// Where a path stopped: a critical-set component id, a boundary loop id,
/// or a cut cycle id. kind None means the path is still running.
struct Terminal {
  TerminalKind kind = TerminalKind::None;
  std::uint32_t index = kInvalid;
  EdgeId edge = kInvalid;  ///< edge on which the path stopped
};

struct AscendingPath {
  NodeId origin = kInvalid;
  std::uint32_t start_component = 0;  ///< index of the Lk+ run, or 0 for loops/cuts
  std::vector<EmbeddedEdge> edges;
  Terminal status;

  bool running() const { return status.kind == TerminalKind::None; }
  VertexId tip() const { return edges.back()[1]; }
};

/// Termination test for the edge (a, b) with rank(a) < rank(b).
Terminal check_edge(const EngineView& view, VertexId a, VertexId b, EdgeId e);

/// A path that starts with edge (a, b) and is immediately checked.
AscendingPath begin_path(const EngineView& view, NodeId origin, std::uint32_t start_component,
                         VertexId a, VertexId b, EdgeId e);

/// One path per Lk+ run of every minimum and saddle in the window (first step
/// to the highest vertex of the run), and one per lower boundary loop from
/// its lowest vertex. Ordered by the rank of the start vertex.
std::vector<AscendingPath> start_paths(const EngineView& view);

/// Paths for one critical or boundary-loop source.
void start_paths_at_critical(const EngineView& view, std::size_t slot,
                             std::vector<AscendingPath>& out);
void start_paths_at_loop(const EngineView& view, std::uint32_t loop,
                         std::vector<AscendingPath>& out);

/// Appends the steepest ascending edge from the tip and re-checks.
/// Throws InternalError if the tip has no higher neighbor.
void advance_path(AscendingPath& path, const EngineView& view);

/// Marks the reached component visited. Returns true when this was the
/// first arrival (the caller then owns an arc); false for a duplicate.
struct VisitState {
  std::vector<std::uint8_t> component;
  std::vector<std::uint8_t> loop;
  std::vector<std::uint8_t> cycle;

  VisitState() = default;
  VisitState(std::size_t components, std::size_t loops, std::size_t cycles)
      : component(components, 0), loop(loops, 0), cycle(cycles, 0) {}
};

/// Target node of a terminal, given the layout.
NodeId terminal_node(const EngineView& view, const Terminal& t);

/// Inserts an arc origin -> terminal for first arrivals; later arrivals are
/// discarded. Returns whether an arc was inserted.
bool terminate_and_connect(AscendingPath& path, const EngineView& view, VisitState& visited,
                           ReebGraph& graph);

/// Adds one node per critical point and boundary loop in NodeLayout order.
void add_base_nodes(ReebGraph& graph, const Mesh& mesh, const ScalarField& field,
                    const CriticalInventory& inventory, const BoundaryReport& boundary);

/// Throws InternalError naming the first unvisited saddle/max component or
/// upper boundary loop.
void require_all_visited(const EngineView& view, const VisitState& visited);

/// Sequential augmented Reeb graph. Throws ValidationError when the boundary
/// is not admissible and InternalError on inconsistent traversal.
ReebGraph reeb_sequential(const Mesh& mesh, const ScalarField& field);

}  // namespace reeb
