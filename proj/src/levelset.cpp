// SPDX-License-Identifier: Apache-2.0
#include "reeb/levelset.hpp"

#include <algorithm>
#include <string>

#include "reeb/error.hpp"

namespace reeb {
namespace {

void sort_unique(std::vector<std::uint32_t>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// The other edge of face f that crosses `level`, or kInvalid.
EdgeId other_crossing_edge(const Mesh& mesh, const ScalarField& field, FaceId f, EdgeId e,
                           RankLevel level) {
  for (EdgeId g : mesh.face_edges(f)) {
    if (g == e) continue;
    const auto& ab = mesh.edge(g);
    if (level.straddles(field.rank(ab[0]), field.rank(ab[1]))) return g;
  }
  return kInvalid;
}

FaceId other_face(const Mesh& mesh, EdgeId e, FaceId f) {
  const auto& ff = mesh.edge_faces(e);
  return ff[0] == f ? ff[1] : ff[0];
}

// Follows the level from `seed` through face `f` until it returns to seed
// or leaves through a boundary edge. Appends the edges after seed.
bool walk(const Mesh& mesh, const ScalarField& field, EdgeId seed, FaceId f, RankLevel level,
          std::vector<EdgeId>& out) {
  EdgeId e = seed;
  while (f != kInvalid) {
    EdgeId next = other_crossing_edge(mesh, field, f, e, level);
    if (next == kInvalid)
      throw InternalError("level walk found a face crossed by a single edge");
    if (next == seed) return true;
    out.push_back(next);
    if (out.size() > mesh.num_edges())
      throw InternalError("level walk did not terminate");
    f = other_face(mesh, next, f);
    e = next;
  }
  return false;
}

}  // namespace

CrossSimplices cross_simplices(const Mesh& mesh, const ScalarField& field, RankLevel level) {
  CrossSimplices out;
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    const auto& ab = mesh.edge(e);
    if (level.straddles(field.rank(ab[0]), field.rank(ab[1]))) out.edges.push_back(e);
  }
  for (FaceId f = 0; f < mesh.num_faces(); ++f) {
    const auto& t = mesh.face(f);
    const int above = level.above(field.rank(t[0])) + level.above(field.rank(t[1])) +
                      level.above(field.rank(t[2]));
    if (above == 1 || above == 2) out.faces.push_back(f);
  }
  return out;
}

CrossSimplices cross_simplices(const Mesh& mesh, const ScalarField& field, VertexId v) {
  CrossSimplices out;
  const Rank r = field.rank(v);
  out.vertices.push_back(v);
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    const auto& ab = mesh.edge(e);
    Rank a = field.rank(ab[0]), b = field.rank(ab[1]);
    if (std::min(a, b) <= r && r <= std::max(a, b)) out.edges.push_back(e);
  }
  for (FaceId f = 0; f < mesh.num_faces(); ++f) {
    const auto& t = mesh.face(f);
    Rank a = field.rank(t[0]), b = field.rank(t[1]), c = field.rank(t[2]);
    if (std::min({a, b, c}) <= r && r <= std::max({a, b, c})) out.faces.push_back(f);
  }
  return out;
}

CrossSimplices cross_simplices(const Mesh& mesh, const ScalarField& field, double t) {
  if (field.size() == 0 || t < field.min_value() || t > field.max_value())
    throw InputError("level " + std::to_string(t) + " is outside the field range [" +
                     std::to_string(field.min_value()) + ", " +
                     std::to_string(field.max_value()) + "]");
  RankLevel level = field.level_below(t);
  if (level.threshold < field.size() && field.value(field.vertex_at(level.threshold)) == t)
    return cross_simplices(mesh, field, field.vertex_at(level.threshold));
  return cross_simplices(mesh, field, level);
}

CrossSimplices closed_cross_simplices(const Mesh& mesh, const ScalarField& field, VertexId v) {
  auto cr = cross_simplices(mesh, field, v);
  CrossSimplices out;
  out.faces = cr.faces;  // faces through the level already include star(v)
  for (FaceId f : out.faces) {
    for (VertexId u : mesh.face(f)) out.vertices.push_back(u);
    for (EdgeId e : mesh.face_edges(f)) out.edges.push_back(e);
  }
  sort_unique(out.vertices);
  sort_unique(out.edges);
  return out;
}

namespace {

LevelPart side_of_level(const Mesh& mesh, const ScalarField& field, VertexId v, bool lower) {
  const Rank r = field.rank(v);
  auto keep = [&](VertexId u) { return lower ? field.rank(u) <= r : field.rank(u) >= r; };
  auto closed = closed_cross_simplices(mesh, field, v);
  LevelPart out;
  for (VertexId u : closed.vertices)
    if (keep(u)) out.vertices.push_back(u);
  for (EdgeId e : closed.edges)
    if (keep(mesh.edge(e)[0]) && keep(mesh.edge(e)[1])) out.edges.push_back(e);
  return out;
}

}  // namespace

LevelPart lower_level(const Mesh& mesh, const ScalarField& field, VertexId v) {
  return side_of_level(mesh, field, v, true);
}

LevelPart higher_level(const Mesh& mesh, const ScalarField& field, VertexId v) {
  return side_of_level(mesh, field, v, false);
}

LevelCycle trace_level_cycle(const Mesh& mesh, const ScalarField& field, EdgeId seed,
                             RankLevel level) {
  const auto& ab = mesh.edge(seed);
  if (!level.straddles(field.rank(ab[0]), field.rank(ab[1])))
    throw InputError("seed edge " + std::to_string(seed) + " does not cross the level");
  LevelCycle out;
  out.level = level;
  std::vector<EdgeId> forward;
  const auto& faces = mesh.edge_faces(seed);
  out.closed = walk(mesh, field, seed, faces[0], level, forward);
  if (out.closed) {
    out.edges.reserve(forward.size() + 1);
    out.edges.push_back(seed);
    out.edges.insert(out.edges.end(), forward.begin(), forward.end());
    return out;
  }
  // open chain: also walk the other way and splice
  std::vector<EdgeId> backward;
  walk(mesh, field, seed, faces[1], level, backward);
  out.edges.assign(backward.rbegin(), backward.rend());
  out.edges.push_back(seed);
  out.edges.insert(out.edges.end(), forward.begin(), forward.end());
  return out;
}

LevelCycle trace_level_cycle(const Mesh& mesh, const ScalarField& field, EdgeId seed, double t) {
  return trace_level_cycle(mesh, field, seed, field.level_below(t));
}

std::vector<LevelCycle> level_cycles(const Mesh& mesh, const ScalarField& field,
                                     RankLevel level) {
  std::vector<LevelCycle> out;
  std::vector<std::uint8_t> seen(mesh.num_edges(), 0);
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    if (seen[e]) continue;
    const auto& ab = mesh.edge(e);
    if (!level.straddles(field.rank(ab[0]), field.rank(ab[1]))) continue;
    auto cycle = trace_level_cycle(mesh, field, e, level);
    for (EdgeId g : cycle.edges) seen[g] = 1;
    out.push_back(std::move(cycle));
  }
  return out;
}

CriticalSet critical_set(const Mesh& mesh, const ScalarField& field, VertexId p, VertexKind kind) {
  CriticalSet out;
  out.vertex = p;
  out.kind = kind;
  if (kind == VertexKind::Minimum || kind == VertexKind::Maximum) {
    out.components.push_back({{}, {p}});
    return out;
  }
  if (kind != VertexKind::Saddle)
    throw InputError("vertex " + std::to_string(p) + " is not a critical point");

  const Rank rp = field.rank(p);
  const RankLevel below{rp};
  const auto link = mesh.link(p);
  std::vector<std::uint32_t> component_of(link.vertices.size(), kInvalid);
  for (std::size_t i = 0; i < link.vertices.size(); ++i) {
    if (field.rank(link.vertices[i]) > rp || component_of[i] != kInvalid) continue;
    auto cycle = trace_level_cycle(mesh, field, link.spokes[i], below);
    const auto id = static_cast<std::uint32_t>(out.components.size());
    CriticalSetComponent comp;
    // mark every lower spoke of p that this cycle passes through
    std::vector<EdgeId> sorted = cycle.edges;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < link.vertices.size(); ++j) {
      if (field.rank(link.vertices[j]) > rp) continue;
      if (std::binary_search(sorted.begin(), sorted.end(), link.spokes[j])) {
        component_of[j] = id;
        comp.lower_link.push_back(link.vertices[j]);
      }
    }
    comp.crossing_edges = std::move(cycle.edges);
    out.components.push_back(std::move(comp));
  }
  return out;
}

CriticalSet critical_set(const Mesh& mesh, const ScalarField& field, VertexId p) {
  return critical_set(mesh, field, p, classify_vertex(mesh, field, p).kind);
}

}  // namespace reeb
