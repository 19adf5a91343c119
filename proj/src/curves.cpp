// SPDX-License-Identifier: Apache-2.0
#include "reeb/curves.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>

#include "reeb/error.hpp"

namespace reeb {

std::vector<EmbeddedCircle> cutting_system(const ReebGraph& graph, const Mesh& mesh,
                                           const ScalarField& field, double t) {
  const auto n = graph.num_nodes();
  std::vector<std::vector<ArcId>> incident(n);
  for (const auto& a : graph.arcs()) {
    incident[a.lo].push_back(a.id);
    if (a.hi != a.lo) incident[a.hi].push_back(a.id);
  }
  // nodes are ordered by level, so each BFS starts at its component's minimum
  std::vector<std::uint8_t> seen(n, 0), tree(graph.num_arcs(), 0);
  for (NodeId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (ArcId a : incident[u]) {
        const NodeId w = graph.arc(a).lo == u ? graph.arc(a).hi : graph.arc(a).lo;
        if (seen[w]) continue;
        seen[w] = 1;
        tree[a] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<EmbeddedCircle> out;
  for (ArcId a = 0; a < graph.num_arcs(); ++a)
    if (!tree[a]) out.push_back(point_to_circle(graph, mesh, field, GraphPoint::on_arc(a, t)));
  return out;
}

std::size_t RetractGraph::degree(NodeId n) const {
  std::size_t d = 0;
  for (const auto& e : edges) d += (e.a == n) + (e.b == n);
  return d;
}

long RetractGraph::betti1() const {
  if (nodes.empty()) return 0;
  std::unordered_map<NodeId, std::uint32_t> index;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::vector<std::uint32_t> parent(nodes.size());
  for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  long components = static_cast<long>(nodes.size());
  for (const auto& e : edges) {
    auto x = find(index.at(e.a)), y = find(index.at(e.b));
    if (x != y) {
      parent[x] = y;
      --components;
    }
  }
  return static_cast<long>(edges.size()) - static_cast<long>(nodes.size()) + components;
}

RetractGraph deformation_retract(const ReebGraph& graph) {
  const auto n = graph.num_nodes();
  std::vector<RetractEdge> edges;
  for (const auto& a : graph.arcs()) edges.push_back({a.lo, a.hi, {a.id}});
  std::vector<std::uint8_t> node_alive(n, 1), edge_alive(edges.size(), 1);
  std::vector<std::vector<std::uint32_t>> incident(n);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].a].push_back(i);
    if (edges[i].b != edges[i].a) incident[edges[i].b].push_back(i);
  }
  auto alive_incident = [&](NodeId u) {
    std::vector<std::uint32_t> out;
    for (auto e : incident[u])
      if (edge_alive[e]) out.push_back(e);
    return out;
  };
  auto degree = [&](NodeId u) {
    std::size_t d = 0;
    for (auto e : alive_incident(u)) d += edges[e].a == edges[e].b ? 2 : 1;
    return d;
  };

  std::deque<NodeId> leaves;
  for (NodeId u = 0; u < n; ++u) leaves.push_back(u);
  while (!leaves.empty()) {
    const NodeId u = leaves.front();
    leaves.pop_front();
    if (!node_alive[u] || graph.node(u).is_loop() || degree(u) > 1) continue;
    node_alive[u] = 0;
    for (auto e : alive_incident(u)) {
      edge_alive[e] = 0;
      leaves.push_back(edges[e].a == u ? edges[e].b : edges[e].a);
    }
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId u = 0; u < n; ++u) {
      if (!node_alive[u]) continue;
      const auto inc = alive_incident(u);
      if (inc.size() != 2 || degree(u) != 2) continue;
      auto e1 = edges[inc[0]], e2 = edges[inc[1]];
      // orient e1 as x -> u and e2 as u -> y
      if (e1.a == u) {
        std::swap(e1.a, e1.b);
        std::reverse(e1.chain.begin(), e1.chain.end());
      }
      if (e2.b == u) {
        std::swap(e2.a, e2.b);
        std::reverse(e2.chain.begin(), e2.chain.end());
      }
      RetractEdge merged{e1.a, e2.b, e1.chain};
      merged.chain.insert(merged.chain.end(), e2.chain.begin(), e2.chain.end());
      edge_alive[inc[0]] = edge_alive[inc[1]] = 0;
      node_alive[u] = 0;
      const auto id = static_cast<std::uint32_t>(edges.size());
      edges.push_back(std::move(merged));
      edge_alive.push_back(1);
      incident[edges[id].a].push_back(id);
      if (edges[id].b != edges[id].a) incident[edges[id].b].push_back(id);
      changed = true;
    }
  }

  RetractGraph out;
  for (NodeId u = 0; u < n; ++u)
    if (node_alive[u]) out.nodes.push_back(u);
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    if (edge_alive[i]) out.edges.push_back(edges[i]);
  return out;
}

std::vector<EmbeddedCircle> pants_curves(const ReebGraph& graph, const Mesh& mesh,
                                         const ScalarField& field) {
  const auto retract = deformation_retract(graph);
  std::vector<EmbeddedCircle> out;
  for (const auto& e : retract.edges) {
    if (retract.degree(e.a) == 1 || retract.degree(e.b) == 1) continue;
    const auto p = point_on_chain(graph, field, e.chain, kCurveParameter);
    out.push_back(point_to_circle(graph, mesh, field, p));
  }
  return out;
}

std::vector<EmbeddedCircle> branch_curves(const ReebGraph& graph, const Mesh& mesh,
                                          const ScalarField& field, double offset) {
  if (!(offset > 0.0 && offset < 1.0)) throw InputError("branch offset must lie in (0,1)");
  const auto deg = graph.degrees();
  auto leaf = [&](NodeId u) { return deg[u] == 1 && !graph.node(u).is_loop(); };
  std::vector<EmbeddedCircle> out;
  for (const auto& a : graph.arcs()) {
    const bool lo_leaf = leaf(a.lo), hi_leaf = leaf(a.hi);
    if (!lo_leaf && !hi_leaf) continue;
    const double t = lo_leaf && hi_leaf ? kCurveParameter : hi_leaf ? offset : 1.0 - offset;
    out.push_back(point_to_circle(graph, mesh, field, GraphPoint::on_arc(a.id, t)));
  }
  return out;
}

namespace {

using EdgeKey = std::uint64_t;
constexpr EdgeKey kNoKey = ~EdgeKey{0};

EdgeKey key_of(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (EdgeKey{a} << 32) | b;
}

struct Copy {
  double level;
  VertexId below;
  VertexId above;
};

class Cutter {
 public:
  Cutter(const Mesh& mesh, const ScalarField& field)
      : input_(mesh), positions_(mesh.positions()), faces_(mesh.faces()) {
    values_.resize(mesh.num_vertices());
    for (VertexId v = 0; v < mesh.num_vertices(); ++v) values_[v] = field.rank(v);
    source_.assign(mesh.num_vertices(), kNoKey);
    origin_.resize(faces_.size());
    for (FaceId f = 0; f < faces_.size(); ++f) origin_[f] = f;
  }

  void cut(const ScalarField& field, const EmbeddedCircle& circle) {
    const double level = circle.cycle.level.as_half_integer();
    const Mesh cur = Mesh::build(positions_, faces_);
    const ScalarField cur_field(values_);
    const EdgeId seed = find_seed(cur, field, circle.seed, level);
    const auto cycle = trace_level_cycle(cur, cur_field, seed, cur_field.level_below(level));

    std::unordered_map<EdgeId, std::pair<VertexId, VertexId>> copies;  // edge -> (below, above)
    std::vector<FaceId> split;
    for (EdgeId e : cycle.edges) {
      const auto& ab = cur.edge(e);
      const double fa = values_[ab[0]], fb = values_[ab[1]];
      if (!((fa < level && fb > level) || (fa > level && fb < level)))
        throw InternalError("cut edge does not cross its level strictly");
      const double s = (level - fa) / (fb - fa);
      const Vec3 p = positions_[ab[0]] + s * (positions_[ab[1]] - positions_[ab[0]]);
      const EdgeKey key = along_key(ab[0], ab[1]);
      const auto below = add_vertex(p, level, key);
      const auto above = add_vertex(p, level, key);
      copies[e] = {below, above};
      if (key != kNoKey) copy_log_[key].push_back({level, below, above});
      for (FaceId f : cur.edge_faces(e))
        if (f != kInvalid) split.push_back(f);
    }
    std::sort(split.begin(), split.end());
    split.erase(std::unique(split.begin(), split.end()), split.end());

    std::vector<std::uint8_t> removed(faces_.size(), 0);
    const std::size_t n_faces = faces_.size();
    for (FaceId f : split) {
      const Triangle tri = cur.face(f);
      int lone = -1;
      for (int i = 0; i < 3; ++i) {
        const bool below_i = values_[tri[i]] < level;
        if (below_i != (values_[tri[(i + 1) % 3]] < level) &&
            below_i != (values_[tri[(i + 2) % 3]] < level))
          lone = i;
      }
      if (lone < 0) throw InternalError("cut face does not straddle its level");
      const VertexId a = tri[lone], b = tri[(lone + 1) % 3], c = tri[(lone + 2) % 3];
      const bool a_below = values_[a] < level;
      const auto& x = copies.at(*cur.find_edge(a, b));
      const auto& y = copies.at(*cur.find_edge(c, a));
      const VertexId xa = a_below ? x.first : x.second, xb = a_below ? x.second : x.first;
      const VertexId ya = a_below ? y.first : y.second, yb = a_below ? y.second : y.first;
      removed[f] = 1;
      for (const Triangle& t : {Triangle{a, xa, ya}, Triangle{xb, b, c}, Triangle{xb, c, yb}}) {
        faces_.push_back(t);
        origin_.push_back(origin_[f]);
      }
    }
    std::size_t w = 0;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (f < n_faces && removed[f]) continue;
      faces_[w] = faces_[f];
      origin_[w] = origin_[f];
      ++w;
    }
    faces_.resize(w);
    origin_.resize(w);
  }

  Segmentation finish(std::size_t circles) {
    Segmentation out{Mesh::build(positions_, faces_), values_, origin_, {}, {}, circles};
    const Mesh& m = out.mesh;
    out.segments.resize(m.num_components());
    std::vector<long> verts(m.num_components(), 0), edges(m.num_components(), 0);
    for (VertexId v = 0; v < m.num_vertices(); ++v) ++verts[m.component_of_vertex(v)];
    for (EdgeId e = 0; e < m.num_edges(); ++e) ++edges[m.component_of_vertex(m.edge(e)[0])];
    out.labels.resize(m.num_faces());
    for (FaceId f = 0; f < m.num_faces(); ++f) {
      out.labels[f] = m.component_of_vertex(m.face(f)[0]);
      ++out.segments[out.labels[f]].faces;
    }
    for (const auto& loop : m.boundary_loops()) ++out.segments[m.component_of_vertex(loop[0])].boundaries;
    for (std::size_t c = 0; c < out.segments.size(); ++c)
      out.segments[c].chi = verts[c] - edges[c] + static_cast<long>(out.segments[c].faces);
    return out;
  }

 private:
  VertexId add_vertex(Vec3 p, double value, EdgeKey source) {
    positions_.push_back(p);
    values_.push_back(value);
    source_.push_back(source);
    return static_cast<VertexId>(positions_.size() - 1);
  }

  bool original(VertexId v) const { return v < input_.num_vertices(); }

  // Input edge that the current edge (a, b) is a piece of, or kNoKey for
  // edges created inside an input face.
  EdgeKey along_key(VertexId a, VertexId b) const {
    if (original(a) && original(b)) return key_of(a, b);
    if (original(a) != original(b)) {
      const VertexId o = original(a) ? a : b, c = original(a) ? b : a;
      const EdgeKey k = source_[c];
      if (k == kNoKey) return kNoKey;
      return (k >> 32) == o || (k & 0xffffffffu) == o ? k : kNoKey;
    }
    return source_[a] == source_[b] ? source_[a] : kNoKey;
  }

  // The piece of input edge `seed` that crosses `level` in the current mesh.
  EdgeId find_seed(const Mesh& cur, const ScalarField& field, EdgeId seed, double level) const {
    auto [u, v] = input_.edge(seed);
    if (field.rank(u) > field.rank(v)) std::swap(u, v);
    VertexId lo = u, hi = v;
    double lo_level = field.rank(u), hi_level = field.rank(v);
    auto it = copy_log_.find(key_of(u, v));
    if (it != copy_log_.end()) {
      for (const auto& c : it->second) {
        if (c.level == level)
          throw InputError("two circles lie on the same level component");
        if (c.level < level && c.level > lo_level) {
          lo_level = c.level;
          lo = c.above;
        }
        if (c.level > level && c.level < hi_level) {
          hi_level = c.level;
          hi = c.below;
        }
      }
    }
    const auto e = cur.find_edge(lo, hi);
    if (!e) throw InternalError("cut seed edge lost after earlier cuts");
    return *e;
  }

  const Mesh& input_;
  std::vector<Vec3> positions_;
  std::vector<Triangle> faces_;
  std::vector<double> values_;
  std::vector<EdgeKey> source_;
  std::vector<FaceId> origin_;
  std::unordered_map<EdgeKey, std::vector<Copy>> copy_log_;
};

}  // namespace

Segmentation cut_mesh(const Mesh& mesh, const ScalarField& field,
                      const std::vector<EmbeddedCircle>& circles) {
  Cutter cutter(mesh, field);
  for (const auto& c : circles) {
    if (c.seed >= mesh.num_edges()) throw InputError("circle seed is not a mesh edge");
    cutter.cut(field, c);
  }
  return cutter.finish(circles.size());
}

}  // namespace reeb
