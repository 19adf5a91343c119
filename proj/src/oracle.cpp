// SPDX-License-Identifier: Apache-2.0
#include "reeb/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "reeb/error.hpp"
#include "reeb/union_find.hpp"

namespace reeb {
namespace {

enum class Side { Lower, Upper };

std::vector<Side> loop_sides(const Mesh& mesh, const ScalarField& field) {
  const auto& loops = mesh.boundary_loops();
  std::vector<Side> sides(loops.size());
  for (std::uint32_t l = 0; l < loops.size(); ++l) {
    Rank lmin = kInvalid, lmax = 0, nmin = kInvalid, nmax = 0;
    for (VertexId v : loops[l]) {
      lmin = std::min(lmin, field.rank(v));
      lmax = std::max(lmax, field.rank(v));
      for (VertexId u : mesh.link(v).vertices) {
        if (mesh.loop_of_vertex(u) == l) continue;
        nmin = std::min(nmin, field.rank(u));
        nmax = std::max(nmax, field.rank(u));
      }
    }
    if (nmin == kInvalid)
      throw ValidationError("boundary loop " + std::to_string(l) + " has no off-loop neighbors");
    if (lmax < nmin)
      sides[l] = Side::Lower;
    else if (lmin > nmax)
      sides[l] = Side::Upper;
    else
      throw ValidationError("boundary loop " + std::to_string(l) +
                            " is neither below nor above its neighborhood");
  }
  return sides;
}

struct Coned {
  Mesh mesh;
  std::vector<std::uint64_t> key;  // sweep order key per vertex
};

// Caps every loop with an apex. Keys: original vertex 4r+2, lower apex
// 4*min+1, upper apex 4*max+3.
Coned cone_off(const Mesh& mesh, const ScalarField& field, const std::vector<Side>& sides) {
  std::vector<Vec3> pos = mesh.positions();
  std::vector<Triangle> faces = mesh.faces();
  std::vector<std::uint64_t> key(mesh.num_vertices());
  for (VertexId v = 0; v < mesh.num_vertices(); ++v) key[v] = 4ull * field.rank(v) + 2;
  const auto& loops = mesh.boundary_loops();
  for (std::uint32_t l = 0; l < loops.size(); ++l) {
    const auto apex = static_cast<VertexId>(pos.size());
    Vec3 c{};
    Rank lmin = kInvalid, lmax = 0;
    for (VertexId v : loops[l]) {
      c = c + mesh.position(v);
      lmin = std::min(lmin, field.rank(v));
      lmax = std::max(lmax, field.rank(v));
    }
    pos.push_back((1.0 / static_cast<double>(loops[l].size())) * c);
    key.push_back(sides[l] == Side::Lower ? 4ull * lmin + 1 : 4ull * lmax + 3);
    const auto& lp = loops[l];
    for (std::size_t i = 0; i < lp.size(); ++i)
      faces.push_back({lp[(i + 1) % lp.size()], lp[i], apex});
  }
  return {Mesh::build(std::move(pos), std::move(faces)), std::move(key)};
}

}  // namespace

SweepGraph sweep_reeb(const Mesh& mesh, const ScalarField& field) {
  if (mesh.num_vertices() > kSweepVertexLimit)
    throw InputError("sweep oracle is limited to " + std::to_string(kSweepVertexLimit) +
                     " vertices (mesh has " + std::to_string(mesh.num_vertices()) + ")");
  if (field.size() != mesh.num_vertices())
    throw InputError("scalar field size does not match mesh");
  const auto sides = loop_sides(mesh, field);
  const auto coned = cone_off(mesh, field, sides);
  const Mesh& cm = coned.mesh;
  const std::size_t nv = cm.num_vertices(), ne = cm.num_edges();
  const std::size_t n_orig = mesh.num_vertices();

  std::vector<VertexId> order(nv);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return coned.key[a] < coned.key[b]; });
  std::vector<std::uint32_t> pos_of(nv);
  for (std::uint32_t i = 0; i < nv; ++i) pos_of[order[i]] = i;

  SweepGraph graph;
  std::vector<std::uint8_t> done(nv, 0);       // processed (below the sweep level)
  std::vector<EdgeId> level;                   // straddling edges
  std::vector<std::uint32_t> slot(ne, kInvalid);  // index in `level`
  std::vector<std::uint32_t> label(ne, kInvalid); // component label of straddling edges
  std::vector<NodeId> source;                  // per label: node the component rose from

  auto straddles = [&](EdgeId e) {
    const auto& ab = cm.edge(e);
    return done[ab[0]] != done[ab[1]];
  };

  for (std::uint32_t k = 0; k < nv; ++k) {
    const VertexId v = order[k];
    const auto link = cm.link(v);

    // components of the level just below v that v closes off
    std::vector<std::uint32_t> ended;
    for (std::size_t i = 0; i < link.vertices.size(); ++i)
      if (done[link.vertices[i]]) ended.push_back(label[link.spokes[i]]);
    std::sort(ended.begin(), ended.end());
    ended.erase(std::unique(ended.begin(), ended.end()), ended.end());

    // move the level past v
    done[v] = 1;
    for (std::size_t i = 0; i < link.vertices.size(); ++i) {
      const EdgeId e = link.spokes[i];
      if (done[link.vertices[i]]) {
        const auto s = slot[e];
        level[s] = level.back();
        slot[level[s]] = s;
        level.pop_back();
        slot[e] = kInvalid;
      } else {
        slot[e] = static_cast<std::uint32_t>(level.size());
        level.push_back(e);
      }
    }

    UnionFind uf(level.size());
    for (std::uint32_t s = 0; s < level.size(); ++s)
      for (FaceId f : cm.edge_faces(level[s])) {
        if (f == kInvalid) continue;
        for (EdgeId g : cm.face_edges(f))
          if (g != level[s] && straddles(g)) uf.unite(s, slot[g]);
      }
    std::vector<std::uint32_t> new_label;
    const auto n_comp = uf.compact(new_label);

    std::vector<std::uint8_t> started_flag(n_comp, 0);
    for (std::size_t i = 0; i < link.vertices.size(); ++i)
      if (!done[link.vertices[i]]) started_flag[new_label[slot[link.spokes[i]]]] = 1;
    const auto started = static_cast<std::size_t>(
        std::count(started_flag.begin(), started_flag.end(), std::uint8_t{1}));

    // runs of lower / upper neighbors around v
    const std::size_t n = link.vertices.size();
    std::size_t n_low = 0, changes = 0;
    for (std::size_t i = 0; i < n; ++i) {
      n_low += done[link.vertices[i]];
      if (done[link.vertices[i]] && !done[link.vertices[(i + 1) % n]]) ++changes;
    }
    const std::size_t lower_runs = n_low == 0 ? 0 : (n_low == n ? 1 : changes);
    const std::size_t upper_runs = n_low == n ? 0 : (n_low == 0 ? 1 : changes);
    const bool plain = ended.size() == 1 && started == 1 && lower_runs == 1 && upper_runs == 1;

    std::vector<NodeId> new_source(n_comp, kInvalid);
    // untouched components keep their source
    for (std::uint32_t s = 0; s < level.size(); ++s) {
      const auto c = new_label[s];
      if (started_flag[c] || new_source[c] != kInvalid) continue;
      new_source[c] = source[label[level[s]]];
    }
    if (plain) {
      const NodeId src = source[ended.front()];
      for (std::uint32_t c = 0; c < n_comp; ++c)
        if (started_flag[c]) new_source[c] = src;
    } else {
      NodeId node;
      if (v < n_orig) {
        const NodeKind kind = ended.empty() ? NodeKind::Min
                              : started == 0 ? NodeKind::Max
                                             : NodeKind::Saddle;
        node = graph.add_node(kind, v, kInvalid, field.rank(v));
      } else {
        const auto l = static_cast<std::uint32_t>(v - n_orig);
        const bool lower = sides[l] == Side::Lower;
        const Rank lvl = static_cast<Rank>(coned.key[v] / 4);
        node = graph.add_node(lower ? NodeKind::BoundaryMin : NodeKind::BoundaryMax, kInvalid, l,
                              lvl);
      }
      for (auto c : ended) graph.add_arc(source[c], node, {});
      for (std::uint32_t c = 0; c < n_comp; ++c)
        if (started_flag[c]) new_source[c] = node;
    }
    for (std::uint32_t s = 0; s < level.size(); ++s) label[level[s]] = new_label[s];
    source = std::move(new_source);
  }
  graph.canonicalize();
  return graph;
}

std::vector<std::size_t> level_component_counts(const Mesh& mesh, const ScalarField& field) {
  const std::size_t n = mesh.num_vertices();
  std::vector<std::size_t> counts(n, 0);
  std::vector<EdgeId> level;
  std::vector<std::uint32_t> slot(mesh.num_edges(), kInvalid);
  for (Rank t = 1; t < n; ++t) {
    const VertexId v = field.vertex_at(t - 1);
    const auto link = mesh.link(v);
    for (std::size_t i = 0; i < link.vertices.size(); ++i) {
      const EdgeId e = link.spokes[i];
      if (field.rank(link.vertices[i]) < t - 1) {
        const auto s = slot[e];
        level[s] = level.back();
        slot[level[s]] = s;
        level.pop_back();
        slot[e] = kInvalid;
      } else {
        slot[e] = static_cast<std::uint32_t>(level.size());
        level.push_back(e);
      }
    }
    UnionFind uf(level.size());
    for (std::uint32_t s = 0; s < level.size(); ++s)
      for (FaceId f : mesh.edge_faces(level[s])) {
        if (f == kInvalid) continue;
        for (EdgeId g : mesh.face_edges(f))
          if (slot[g] != kInvalid) uf.unite(s, slot[g]);
      }
    std::vector<std::uint32_t> labels;
    counts[t] = uf.compact(labels);
  }
  return counts;
}

namespace {

using Label = std::tuple<int, std::uint32_t, Rank>;  // (is_loop, vertex|loop, level)

Label label_of(const ReebNode& n) {
  return n.is_loop() ? Label{1, n.loop, n.level} : Label{0, n.vertex, n.level};
}

std::string describe(const Label& l) {
  return (std::get<0>(l) ? "loop " : "vertex ") + std::to_string(std::get<1>(l)) + "@" +
         std::to_string(std::get<2>(l));
}

}  // namespace

IsoResult graphs_isomorphic(const ReebGraph& a, const ReebGraph& b) {
  auto labels = [](const ReebGraph& g) {
    std::vector<Label> out;
    for (const auto& n : g.nodes()) out.push_back(label_of(n));
    return out;
  };
  auto la = labels(a), lb = labels(b);
  auto sa = la, sb = lb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (std::adjacent_find(sa.begin(), sa.end()) != sa.end())
    return {false, "first graph has duplicate node labels"};
  if (sa != sb) {
    std::vector<Label> only_a, only_b;
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(only_a));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));
    std::string w = "node labels differ:";
    if (!only_a.empty()) w += " only in first: " + describe(only_a.front());
    if (!only_b.empty()) w += " only in second: " + describe(only_b.front());
    w += " (" + std::to_string(a.num_nodes()) + " vs " + std::to_string(b.num_nodes()) + " nodes)";
    return {false, w};
  }
  auto arcs = [](const ReebGraph& g, const std::vector<Label>& l) {
    std::map<std::pair<Label, Label>, int> out;
    for (const auto& arc : g.arcs()) {
      auto x = l[arc.lo], y = l[arc.hi];
      if (y < x) std::swap(x, y);
      ++out[{x, y}];
    }
    return out;
  };
  auto ma = arcs(a, la), mb = arcs(b, lb);
  if (ma != mb) {
    for (const auto& [k, c] : ma) {
      auto it = mb.find(k);
      int other = it == mb.end() ? 0 : it->second;
      if (other != c)
        return {false, "arc " + describe(k.first) + " -- " + describe(k.second) + " appears " +
                           std::to_string(c) + "x in first, " + std::to_string(other) +
                           "x in second"};
    }
    for (const auto& [k, c] : mb)
      if (!ma.count(k))
        return {false, "arc " + describe(k.first) + " -- " + describe(k.second) +
                           " appears only in second (" + std::to_string(c) + "x)"};
  }
  return {true, std::to_string(a.num_nodes()) + " nodes and " + std::to_string(a.num_arcs()) +
                    " arcs matched"};
}

}  // namespace reeb
