// SPDX-License-Identifier: Apache-2.0
#include "reeb/reeb_par.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reeb/error.hpp"
#include "reeb/parallel.hpp"
#include "reeb/union_find.hpp"

namespace reeb {

std::vector<std::uint8_t> boundary_blocked_thresholds(const Mesh& mesh, const ScalarField& field) {
  std::vector<std::uint8_t> blocked(field.size() + 1, 0);
  std::vector<int> delta(field.size() + 2, 0);
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.is_boundary_edge(e)) continue;
    auto [a, b] = mesh.edge(e);
    Rank lo = std::min(field.rank(a), field.rank(b)), hi = std::max(field.rank(a), field.rank(b));
    // thresholds lo+1 .. hi are crossed
    ++delta[lo + 1];
    --delta[hi + 1];
  }
  int run = 0;
  for (std::size_t t = 0; t <= field.size(); ++t) {
    run += delta[t];
    blocked[t] = run > 0;
  }
  return blocked;
}

CutPlan choose_cuts(const ScalarField& field, const CriticalInventory& inventory, std::size_t k,
                    const std::vector<std::uint8_t>& blocked) {
  CutPlan plan;
  const auto n = static_cast<long>(field.size());
  auto critical_at = [&](long r) {
    return r >= 0 && r < n && inventory.is_critical(field.vertex_at(static_cast<Rank>(r)));
  };
  auto allowed = [&](long t) {
    if (t < 1 || t >= n) return false;
    if (critical_at(t - 1) || critical_at(t)) return false;
    return blocked.empty() || !blocked[static_cast<std::size_t>(t)];
  };
  long prev = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    const long target = std::lround(static_cast<double>(i) * static_cast<double>(n) /
                                    static_cast<double>(k + 1));
    long found = -1;
    for (long d = 0; d < n && found < 0; ++d) {
      for (long t : {target - d, target + d}) {
        if (t > prev && allowed(t)) {
          found = t;
          break;
        }
      }
    }
    if (found < 0) {
      plan.warnings.push_back("could not place cut " + std::to_string(i) + " of " +
                              std::to_string(k) + " on a regular level; using fewer cuts");
      continue;
    }
    plan.thresholds.push_back(static_cast<Rank>(found));
    prev = found;
  }
  return plan;
}

Partition build_partition(const Mesh& mesh, const ScalarField& field,
                          const CriticalInventory& inventory, const std::vector<Rank>& thresholds,
                          unsigned workers) {
  Partition p;
  p.thresholds = thresholds;
  const std::size_t k = thresholds.size();

  // straddling edges per cut
  std::vector<std::vector<EdgeId>> crossing(k);
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    auto [a, b] = mesh.edge(e);
    Rank lo = std::min(field.rank(a), field.rank(b)), hi = std::max(field.rank(a), field.rank(b));
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), lo);
    for (; it != thresholds.end() && *it <= hi; ++it)
      crossing[static_cast<std::size_t>(it - thresholds.begin())].push_back(e);
  }

  std::vector<std::vector<CutCycle>> per_cut(k);
  parallel_for(k, workers, [&](std::size_t c) {
    const RankLevel level{thresholds[c]};
    std::unordered_map<EdgeId, std::uint8_t> seen;
    for (EdgeId e : crossing[c]) {
      if (seen.count(e)) continue;
      CutCycle cc;
      cc.cut = static_cast<std::uint32_t>(c);
      cc.cycle = trace_level_cycle(mesh, field, e, level);
      if (!cc.cycle.closed) throw InternalError("cut cycle runs into the boundary");
      Rank best = kInvalid;
      for (EdgeId g : cc.cycle.edges) {
        seen[g] = 1;
        auto [x, y] = mesh.edge(g);
        const Rank up = std::max(field.rank(x), field.rank(y));
        if (up < best || (up == best && g < cc.canonical)) {
          best = up;
          cc.canonical = g;
        }
      }
      per_cut[c].push_back(std::move(cc));
    }
  });

  p.cycle_offset.assign(k + 1, 0);
  p.cycle_of_edge.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    p.cycle_offset[c + 1] = p.cycle_offset[c] + static_cast<std::uint32_t>(per_cut[c].size());
    for (auto& cc : per_cut[c]) {
      const auto id = static_cast<std::uint32_t>(p.cycles.size());
      for (EdgeId g : cc.cycle.edges) p.cycle_of_edge[c][g] = id;
      p.cycles.push_back(std::move(cc));
    }
  }

  p.slabs.resize(k + 1);
  for (std::size_t s = 0; s <= k; ++s) {
    auto& slab = p.slabs[s];
    slab.lo = s == 0 ? 0 : thresholds[s - 1];
    slab.hi = s == k ? static_cast<Rank>(field.size()) : thresholds[s];
    if (s > 0) slab.lower_crossing = crossing[s - 1];
    if (s < k) slab.upper_crossing = crossing[s];
    for (const auto* list : {&slab.lower_crossing, &slab.upper_crossing})
      for (EdgeId e : *list)
        for (VertexId v : mesh.edge(e)) {
          const Rank r = field.rank(v);
          if ((r < slab.lo || r >= slab.hi) && !inventory.is_critical(v))
            slab.extension.push_back(v);
        }
    std::sort(slab.extension.begin(), slab.extension.end());
    slab.extension.erase(std::unique(slab.extension.begin(), slab.extension.end()),
                         slab.extension.end());
  }
  return p;
}

namespace {

std::uint64_t crossing_key(std::uint32_t cut, EdgeId e) {
  return (static_cast<std::uint64_t>(cut) << 32) | e;
}

}  // namespace

void CrossingMap::insert(std::uint32_t cut, EdgeId e, NodeId node) {
  auto& stripe = stripes_[e % kStripes];
  std::lock_guard lock(stripe.mutex);
  auto [it, fresh] =
      stripe.map.try_emplace(crossing_key(cut, e), std::array<NodeId, 2>{kInvalid, kInvalid});
  auto& slot = it->second;
  if (slot[0] == kInvalid)
    slot[0] = node;
  else if (slot[1] == kInvalid)
    slot[1] = node;
  else
    throw InternalError("crossing edge " + std::to_string(e) + " already holds two nodes");
}

std::vector<NodeId> CrossingMap::get(std::uint32_t cut, EdgeId e) const {
  const auto& stripe = stripes_[e % kStripes];
  std::lock_guard lock(stripe.mutex);
  std::vector<NodeId> out;
  if (auto it = stripe.map.find(crossing_key(cut, e)); it != stripe.map.end())
    for (NodeId n : it->second)
      if (n != kInvalid) out.push_back(n);
  return out;
}

std::size_t CrossingMap::size() const {
  std::size_t n = 0;
  for (const auto& s : stripes_) {
    std::lock_guard lock(s.mutex);
    n += s.map.size();
  }
  return n;
}

namespace {

EngineView slab_view(const ParallelContext& ctx, std::uint32_t s) {
  EngineView v;
  v.mesh = ctx.mesh;
  v.field = ctx.field;
  v.inventory = ctx.inventory;
  v.boundary = ctx.boundary;
  v.index = ctx.index;
  v.layout = ctx.layout;
  const auto& slab = ctx.partition->slabs[s];
  v.window_lo = slab.lo;
  v.window_hi = slab.hi;
  if (s < ctx.partition->thresholds.size()) v.upper_cut = &ctx.partition->cycle_of_edge[s];
  return v;
}

}  // namespace

std::vector<SlabTask> build_tasks(const ParallelContext& ctx, unsigned workers) {
  const auto& mesh = *ctx.mesh;
  const auto& field = *ctx.field;
  const auto& part = *ctx.partition;
  const auto& th = part.thresholds;
  const std::size_t n_slabs = part.slabs.size();
  auto slab_of = [&](Rank r) {
    return static_cast<std::size_t>(std::upper_bound(th.begin(), th.end(), r) - th.begin());
  };

  // edges whose rank span meets each slab
  std::vector<std::vector<EdgeId>> edges(n_slabs);
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    auto [a, b] = mesh.edge(e);
    const Rank lo = std::min(field.rank(a), field.rank(b));
    const Rank hi = std::max(field.rank(a), field.rank(b));
    for (std::size_t s = slab_of(lo); s <= slab_of(hi); ++s) edges[s].push_back(e);
  }

  std::vector<std::vector<SlabTask>> per_slab(n_slabs);
  parallel_for(n_slabs, workers, [&](std::size_t s) {
    const auto& slab = part.slabs[s];
    std::unordered_map<VertexId, std::uint32_t> outside;
    auto local = [&](VertexId v) -> std::uint32_t {
      const Rank r = field.rank(v);
      if (r >= slab.lo && r < slab.hi) return r - slab.lo;
      auto [it, fresh] = outside.try_emplace(
          v, static_cast<std::uint32_t>(slab.num_vertices() + outside.size()));
      return it->second;
    };
    for (EdgeId e : edges[s])
      for (VertexId v : mesh.edge(e)) local(v);
    UnionFind uf(slab.num_vertices() + outside.size());
    for (EdgeId e : edges[s]) uf.unite(local(mesh.edge(e)[0]), local(mesh.edge(e)[1]));
    std::vector<std::uint32_t> comp;
    const auto n_comp = uf.compact(comp);

    std::vector<SlabTask> tasks(n_comp);
    for (auto& t : tasks) t.slab = static_cast<std::uint32_t>(s);
    if (s > 0)
      for (std::uint32_t c = part.cycle_offset[s - 1]; c < part.cycle_offset[s]; ++c)
        tasks[comp[local(mesh.edge(part.cycles[c].canonical)[0])]].lower_cycles.push_back(c);
    const auto& crit = ctx.inventory->sorted;
    for (std::size_t i = 0; i < crit.size(); ++i)
      if (crit[i].rank >= slab.lo && crit[i].rank < slab.hi)
        tasks[comp[local(crit[i].vertex)]].criticals.push_back(static_cast<std::uint32_t>(i));
    const auto& loops = mesh.boundary_loops();
    for (std::uint32_t l = 0; l < loops.size(); ++l) {
      if (ctx.boundary->sides[l] != LoopSide::Lower) continue;
      const Rank r = field.rank(loops[l].front());
      if (r >= slab.lo && r < slab.hi) tasks[comp[local(loops[l].front())]].loops.push_back(l);
    }
    for (auto& t : tasks)
      if (!t.lower_cycles.empty() || !t.criticals.empty() || !t.loops.empty())
        per_slab[s].push_back(std::move(t));
  });

  std::vector<SlabTask> out;
  for (auto& v : per_slab)
    for (auto& t : v) out.push_back(std::move(t));
  return out;
}

LocalGraph reeb_local(const ParallelContext& ctx, const SlabTask& task, VisitState& visited,
                      CrossingMap& G) {
  const auto view = slab_view(ctx, task.slab);
  const auto& field = *ctx.field;
  const auto& part = *ctx.partition;
  LocalGraph out;
  out.slab = task.slab;

  auto finish = [&](AscendingPath& path) {
    while (path.running()) advance_path(path, view);
    std::uint8_t* flag = nullptr;
    switch (path.status.kind) {
      case TerminalKind::Critical: flag = &visited.component[path.status.index]; break;
      case TerminalKind::Loop: flag = &visited.loop[path.status.index]; break;
      case TerminalKind::Crossing: flag = &visited.cycle[path.status.index]; break;
      case TerminalKind::None: throw InternalError("path did not terminate");
    }
    if (*flag) return;
    *flag = 1;
    const NodeId hi = terminal_node(view, path.status);
    if (path.status.kind == TerminalKind::Crossing)
      G.insert(part.cycles[path.status.index].cut, path.status.edge, hi);
    out.arcs.push_back({path.origin, hi, std::move(path.edges)});
  };

  for (std::uint32_t c : task.lower_cycles) {
    const EdgeId e = part.cycles[c].canonical;
    auto [x, y] = ctx.mesh->edge(e);
    if (field.rank(x) > field.rank(y)) std::swap(x, y);
    const NodeId origin = ctx.layout.crossing(c, 1);
    G.insert(part.cycles[c].cut, e, origin);
    auto path = begin_path(view, origin, 0, x, y, e);
    finish(path);
  }

  // criticals and lower loops interleaved by start rank
  const auto& crit = ctx.inventory->sorted;
  const auto& loops = ctx.mesh->boundary_loops();
  auto loop_rank = [&](std::uint32_t l) {
    Rank r = kInvalid;
    for (VertexId v : loops[l]) r = std::min(r, field.rank(v));
    return r;
  };
  std::size_t ci = 0, li = 0;
  std::vector<AscendingPath> paths;
  while (ci < task.criticals.size() || li < task.loops.size()) {
    const bool take_loop =
        ci == task.criticals.size() ||
        (li < task.loops.size() && loop_rank(task.loops[li]) < crit[task.criticals[ci]].rank);
    paths.clear();
    if (take_loop)
      start_paths_at_loop(view, task.loops[li++], paths);
    else
      start_paths_at_critical(view, task.criticals[ci++], paths);
    for (auto& p : paths) finish(p);
  }
  return out;
}

namespace {

// Appends `tail` to `head`, skipping tail edges that do not rise above the
// last edge of head.
void concatenate(const ScalarField& field, std::vector<EmbeddedEdge>& head,
                 const std::vector<EmbeddedEdge>& tail) {
  const Rank top = head.empty() ? 0 : field.rank(head.back()[1]);
  auto it = tail.begin();
  while (it != tail.end() && field.rank((*it)[1]) <= top) ++it;
  head.insert(head.end(), it, tail.end());
}

}  // namespace

ReebGraph glue(const ParallelContext& ctx, const std::vector<LocalGraph>& locals,
               const CrossingMap& G) {
  const auto& part = *ctx.partition;
  const auto& layout = ctx.layout;
  const NodeId first_crossing = layout.crossing(0, 0);

  for (std::uint32_t c = 0; c < part.cycles.size(); ++c) {
    std::vector<NodeId> ids;
    for (EdgeId e : part.cycles[c].cycle.edges)
      for (NodeId n : G.get(part.cycles[c].cut, e)) ids.push_back(n);
    std::sort(ids.begin(), ids.end());
    if (ids.size() != 2 || ids[0] != layout.crossing(c, 0) || ids[1] != layout.crossing(c, 1))
      throw InternalError("cut cycle " + std::to_string(c) + " owns " +
                          std::to_string(ids.size()) + " crossing node ids, expected 2");
  }

  std::vector<const LocalArc*> arcs;
  for (const auto& l : locals)
    for (const auto& a : l.arcs) arcs.push_back(&a);
  std::vector<const LocalArc*> leaving(part.cycles.size(), nullptr);
  for (const auto* a : arcs) {
    if (a->lo < first_crossing) continue;
    const auto c = (a->lo - first_crossing) / 2;
    if (leaving[c]) throw InternalError("two arcs leave crossing node of cycle " + std::to_string(c));
    leaving[c] = a;
  }

  ReebGraph g;
  add_base_nodes(g, *ctx.mesh, *ctx.field, *ctx.inventory, *ctx.boundary);
  std::size_t used = 0;
  for (const auto* a : arcs) {
    if (a->lo >= first_crossing) continue;
    ++used;
    std::vector<EmbeddedEdge> emb = a->embedding;
    NodeId hi = a->hi;
    while (hi >= first_crossing) {
      const auto c = (hi - first_crossing) / 2;
      const LocalArc* next = leaving[c];
      if (!next) throw InternalError("no arc continues above cut cycle " + std::to_string(c));
      ++used;
      concatenate(*ctx.field, emb, next->embedding);
      hi = next->hi;
    }
    g.add_arc(a->lo, hi, std::move(emb));
  }
  if (used != arcs.size())
    throw InternalError("gluing left " + std::to_string(arcs.size() - used) + " arcs unattached");
  return g;
}

ReebGraph reeb_parallel(const Mesh& mesh, const ScalarField& field, ParallelOptions options,
                        ParallelReport* report) {
  if (field.size() != mesh.num_vertices())
    throw InputError("scalar field size does not match mesh");
  const unsigned workers = std::max(1u, options.workers);
  const std::size_t k =
      options.cuts < 0 ? workers - 1 : static_cast<std::size_t>(options.cuts);
  if (k == 0) return reeb_sequential(mesh, field);

  const auto boundary = require_clean_boundary(mesh, field);
  const auto inventory = build_inventory(mesh, field, workers);
  auto plan = choose_cuts(field, inventory, k, boundary_blocked_thresholds(mesh, field));
  if (report) {
    report->thresholds = plan.thresholds;
    report->warnings = plan.warnings;
  }
  if (plan.thresholds.empty()) return reeb_sequential(mesh, field);

  const auto index = build_termination_index(mesh, field, inventory, workers);
  const auto partition = build_partition(mesh, field, inventory, plan.thresholds, workers);
  ParallelContext ctx;
  ctx.mesh = &mesh;
  ctx.field = &field;
  ctx.inventory = &inventory;
  ctx.boundary = &boundary;
  ctx.index = &index;
  ctx.partition = &partition;
  ctx.layout = {inventory.sorted.size(), mesh.boundary_loops().size()};

  const auto tasks = build_tasks(ctx, workers);
  if (report) {
    report->tasks = tasks.size();
    for (const auto& s : partition.slabs) report->slab_sizes.push_back(s.num_vertices());
  }
  VisitState visited(index.num_components(), mesh.boundary_loops().size(),
                     partition.cycles.size());
  CrossingMap G;
  std::vector<LocalGraph> locals(tasks.size());
  parallel_for(
      tasks.size(), workers,
      [&](std::size_t i) { locals[i] = reeb_local(ctx, tasks[i], visited, G); }, 1);

  require_all_visited(EngineView::whole(mesh, field, inventory, boundary, index), visited);
  auto graph = glue(ctx, locals, G);
  graph.canonicalize();
  return graph;
}

}  // namespace reeb
