// SPDX-License-Identifier: Apache-2.0
#include "reeb/reeb_seq.hpp"

#include <algorithm>
#include <string>

#include "reeb/error.hpp"
#include "reeb/parallel.hpp"

namespace reeb {

TerminationIndex build_termination_index(const Mesh& mesh, const ScalarField& field,
                                         const CriticalInventory& inventory, unsigned workers) {
  TerminationIndex idx;
  const auto& crit = inventory.sorted;
  idx.sets.resize(crit.size());
  parallel_for(crit.size(), workers, [&](std::size_t i) {
    idx.sets[i] = critical_set(mesh, field, crit[i].vertex, crit[i].kind);
  });

  idx.component_offset.assign(crit.size() + 1, 0);
  for (std::size_t i = 0; i < crit.size(); ++i)
    idx.component_offset[i + 1] =
        idx.component_offset[i] + static_cast<std::uint32_t>(idx.sets[i].components.size());
  idx.slot_of_component.resize(idx.component_offset.back());
  for (std::size_t i = 0; i < crit.size(); ++i) {
    for (std::uint32_t c = 0; c < idx.sets[i].components.size(); ++c) {
      const auto id = idx.component_offset[i] + c;
      idx.slot_of_component[id] = static_cast<std::uint32_t>(i);
      // slots are visited in rank order, so each list stays sorted
      for (EdgeId e : idx.sets[i].components[c].crossing_edges) idx.lookup[e].push_back(id);
    }
  }
  return idx;
}

EngineView EngineView::whole(const Mesh& mesh, const ScalarField& field,
                             const CriticalInventory& inventory, const BoundaryReport& boundary,
                             const TerminationIndex& index) {
  EngineView v;
  v.mesh = &mesh;
  v.field = &field;
  v.inventory = &inventory;
  v.boundary = &boundary;
  v.index = &index;
  v.layout = {inventory.sorted.size(), mesh.boundary_loops().size()};
  v.window_lo = 0;
  v.window_hi = static_cast<Rank>(field.size());
  return v;
}

Terminal check_edge(const EngineView& view, VertexId a, VertexId b, EdgeId e) {
  (void)a;
  const auto& inv = *view.inventory;
  if (auto it = view.index->lookup.find(e); it != view.index->lookup.end()) {
    for (std::uint32_t comp : it->second) {
      const Rank r = inv.sorted[view.index->slot_of_component[comp]].rank;
      if (r < view.window_lo) continue;
      if (r >= view.window_hi) break;
      return {TerminalKind::Critical, comp, e};
    }
  }
  const Rank rb = view.field->rank(b);
  if (rb >= view.window_hi) {
    if (view.upper_cut == nullptr)
      throw InternalError("path left the rank window without a cut map");
    auto it = view.upper_cut->find(e);
    if (it == view.upper_cut->end())
      throw InternalError("edge " + std::to_string(e) + " crosses a cut but is on no cut cycle");
    return {TerminalKind::Crossing, it->second, e};
  }
  if (auto slot = inv.index_of(b); slot && inv.sorted[*slot].kind == VertexKind::Maximum)
    return {TerminalKind::Critical, view.index->component_offset[*slot], e};
  if (auto l = view.mesh->loop_of_vertex(b);
      l != kInvalid && view.boundary->sides[l] == LoopSide::Upper)
    return {TerminalKind::Loop, l, e};
  return {};
}

AscendingPath begin_path(const EngineView& view, NodeId origin, std::uint32_t start_component,
                         VertexId a, VertexId b, EdgeId e) {
  AscendingPath p;
  p.origin = origin;
  p.start_component = start_component;
  p.edges.push_back({a, b});
  p.status = check_edge(view, a, b, e);
  return p;
}

namespace {

// Highest-ranked neighbor of v above v, with its spoke; kInvalid if none.
std::pair<VertexId, EdgeId> steepest_up(const EngineView& view, VertexId v) {
  const auto link = view.mesh->link(v);
  Rank best = view.field->rank(v);
  std::pair<VertexId, EdgeId> out{kInvalid, kInvalid};
  for (std::size_t i = 0; i < link.vertices.size(); ++i) {
    const Rank r = view.field->rank(link.vertices[i]);
    if (r > best) {
      best = r;
      out = {link.vertices[i], link.spokes[i]};
    }
  }
  return out;
}

}  // namespace

void start_paths_at_critical(const EngineView& view, std::size_t slot,
                             std::vector<AscendingPath>& out) {
  const auto& cp = view.inventory->sorted[slot];
  if (cp.kind != VertexKind::Minimum && cp.kind != VertexKind::Saddle) return;
  const auto& mesh = *view.mesh;
  const auto& field = *view.field;
  auto cls = classify_vertex(mesh, field, cp.vertex);
  for (std::uint32_t c = 0; c < cls.upper_components.size(); ++c) {
    const auto& run = cls.upper_components[c];
    VertexId top = *std::max_element(run.begin(), run.end(), [&](VertexId x, VertexId y) {
      return field.rank(x) < field.rank(y);
    });
    EdgeId e = *mesh.find_edge(cp.vertex, top);
    out.push_back(begin_path(view, view.layout.critical(slot), c, cp.vertex, top, e));
  }
}

void start_paths_at_loop(const EngineView& view, std::uint32_t loop,
                         std::vector<AscendingPath>& out) {
  if (view.boundary->sides[loop] != LoopSide::Lower) return;
  const auto& verts = view.mesh->boundary_loops()[loop];
  VertexId low = *std::min_element(verts.begin(), verts.end(), [&](VertexId x, VertexId y) {
    return view.field->rank(x) < view.field->rank(y);
  });
  auto [next, e] = steepest_up(view, low);
  if (next == kInvalid)
    throw InternalError("lower boundary vertex " + std::to_string(low) + " has no higher neighbor");
  out.push_back(begin_path(view, view.layout.loop(loop), 0, low, next, e));
}

std::vector<AscendingPath> start_paths(const EngineView& view) {
  // (start rank, kind, index): criticals and lower loops interleaved by rank
  struct Source {
    Rank rank;
    bool is_loop;
    std::uint32_t index;
  };
  std::vector<Source> sources;
  for (std::size_t s = 0; s < view.inventory->sorted.size(); ++s) {
    const auto& cp = view.inventory->sorted[s];
    if (cp.rank >= view.window_lo && cp.rank < view.window_hi)
      sources.push_back({cp.rank, false, static_cast<std::uint32_t>(s)});
  }
  const auto& loops = view.mesh->boundary_loops();
  for (std::uint32_t l = 0; l < loops.size(); ++l) {
    if (view.boundary->sides[l] != LoopSide::Lower) continue;
    Rank low = kInvalid;
    for (VertexId v : loops[l]) low = std::min(low, view.field->rank(v));
    if (low >= view.window_lo && low < view.window_hi) sources.push_back({low, true, l});
  }
  std::sort(sources.begin(), sources.end(),
            [](const Source& a, const Source& b) { return a.rank < b.rank; });
  std::vector<AscendingPath> out;
  for (const auto& s : sources) {
    if (s.is_loop)
      start_paths_at_loop(view, s.index, out);
    else
      start_paths_at_critical(view, s.index, out);
  }
  return out;
}

void advance_path(AscendingPath& path, const EngineView& view) {
  if (!path.running()) return;
  const VertexId a = path.tip();
  auto [b, e] = steepest_up(view, a);
  if (b == kInvalid)
    throw InternalError("ascending path stuck at vertex " + std::to_string(a) +
                        ", which is not a classified maximum");
  path.edges.push_back({a, b});
  path.status = check_edge(view, a, b, e);
}

NodeId terminal_node(const EngineView& view, const Terminal& t) {
  switch (t.kind) {
    case TerminalKind::Critical:
      return view.layout.critical(view.index->slot_of_component[t.index]);
    case TerminalKind::Loop: return view.layout.loop(t.index);
    case TerminalKind::Crossing: return view.layout.crossing(t.index, 0);
    case TerminalKind::None: break;
  }
  throw InternalError("path has not terminated");
}

bool terminate_and_connect(AscendingPath& path, const EngineView& view, VisitState& visited,
                           ReebGraph& graph) {
  std::uint8_t* flag = nullptr;
  switch (path.status.kind) {
    case TerminalKind::Critical: flag = &visited.component[path.status.index]; break;
    case TerminalKind::Loop: flag = &visited.loop[path.status.index]; break;
    case TerminalKind::Crossing: flag = &visited.cycle[path.status.index]; break;
    case TerminalKind::None: throw InternalError("cannot connect a running path");
  }
  if (*flag) return false;
  *flag = 1;
  graph.add_arc(path.origin, terminal_node(view, path.status), std::move(path.edges));
  return true;
}

void add_base_nodes(ReebGraph& graph, const Mesh& mesh, const ScalarField& field,
                    const CriticalInventory& inventory, const BoundaryReport& boundary) {
  for (const auto& cp : inventory.sorted) {
    NodeKind kind = cp.kind == VertexKind::Minimum   ? NodeKind::Min
                    : cp.kind == VertexKind::Maximum ? NodeKind::Max
                                                     : NodeKind::Saddle;
    graph.add_node(kind, cp.vertex, kInvalid, cp.rank);
  }
  const auto& loops = mesh.boundary_loops();
  for (std::uint32_t l = 0; l < loops.size(); ++l) {
    Rank lo = kInvalid, hi = 0;
    for (VertexId v : loops[l]) {
      lo = std::min(lo, field.rank(v));
      hi = std::max(hi, field.rank(v));
    }
    if (boundary.sides[l] == LoopSide::Lower)
      graph.add_node(NodeKind::BoundaryMin, kInvalid, l, lo);
    else
      graph.add_node(NodeKind::BoundaryMax, kInvalid, l, hi);
  }
}

void require_all_visited(const EngineView& view, const VisitState& visited) {
  const auto& inv = *view.inventory;
  for (std::uint32_t c = 0; c < visited.component.size(); ++c) {
    if (visited.component[c]) continue;
    const auto& cp = inv.sorted[view.index->slot_of_component[c]];
    if (cp.kind == VertexKind::Minimum) continue;
    if (cp.rank < view.window_lo || cp.rank >= view.window_hi) continue;
    throw InternalError("no ascending path reached component " +
                        std::to_string(c - view.index->component_offset[
                                               view.index->slot_of_component[c]]) +
                        " of the critical set of vertex " + std::to_string(cp.vertex) + " (" +
                        to_string(cp.kind) + ", rank " + std::to_string(cp.rank) + ")");
  }
  for (std::uint32_t l = 0; l < visited.loop.size(); ++l)
    if (!visited.loop[l] && view.boundary->sides[l] == LoopSide::Upper)
      throw InternalError("no ascending path reached upper boundary loop " + std::to_string(l));
}

ReebGraph reeb_sequential(const Mesh& mesh, const ScalarField& field) {
  if (field.size() != mesh.num_vertices())
    throw InputError("scalar field size does not match mesh");
  const auto boundary = require_clean_boundary(mesh, field);
  const auto inventory = build_inventory(mesh, field);
  const auto index = build_termination_index(mesh, field, inventory);
  const auto view = EngineView::whole(mesh, field, inventory, boundary, index);

  ReebGraph graph;
  add_base_nodes(graph, mesh, field, inventory, boundary);
  VisitState visited(index.num_components(), mesh.boundary_loops().size(), 0);
  for (auto& path : start_paths(view)) {
    while (path.running()) advance_path(path, view);
    terminate_and_connect(path, view, visited, graph);
  }
  require_all_visited(view, visited);
  graph.canonicalize();
  return graph;
}

}  // namespace reeb
