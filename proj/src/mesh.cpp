// SPDX-License-Identifier: Apache-2.0
#include "reeb/mesh.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

#include "reeb/error.hpp"
#include "reeb/union_find.hpp"

namespace reeb {
namespace {

struct HalfEdgeRecord {
  VertexId lo;
  VertexId hi;
  FaceId face;
  std::uint8_t slot;  // which face edge
  bool forward;       // face traverses lo -> hi
};

std::string edge_str(VertexId a, VertexId b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

std::vector<HalfEdgeRecord> collect_half_edges(const std::vector<Triangle>& faces) {
  std::vector<HalfEdgeRecord> records;
  records.reserve(faces.size() * 3);
  for (FaceId f = 0; f < faces.size(); ++f) {
    for (std::uint8_t i = 0; i < 3; ++i) {
      VertexId a = faces[f][i];
      VertexId b = faces[f][(i + 1) % 3];
      records.push_back({std::min(a, b), std::max(a, b), f, i, a < b});
    }
  }
  std::sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.lo, x.hi, x.face, x.slot) < std::tie(y.lo, y.hi, y.face, y.slot);
  });
  return records;
}

}  // namespace

bool orient_consistently(std::vector<Triangle>& faces, std::size_t num_vertices) {
  (void)num_vertices;
  auto records = collect_half_edges(faces);
  // face adjacency across shared edges
  std::vector<std::vector<std::pair<FaceId, std::pair<VertexId, VertexId>>>> adj(faces.size());
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const auto& r = records[i];
    const auto& s = records[i + 1];
    if (r.lo == s.lo && r.hi == s.hi) {
      adj[r.face].push_back({s.face, {r.lo, r.hi}});
      adj[s.face].push_back({r.face, {r.lo, r.hi}});
    }
  }
  auto traverses = [&](FaceId f, VertexId a, VertexId b) {
    for (int i = 0; i < 3; ++i)
      if (faces[f][i] == a && faces[f][(i + 1) % 3] == b) return true;
    return false;
  };
  std::vector<std::int8_t> state(faces.size(), 0);  // 0 unvisited, 1 kept, 2 flipped
  for (FaceId seed = 0; seed < faces.size(); ++seed) {
    if (state[seed]) continue;
    state[seed] = 1;
    std::queue<FaceId> queue;
    queue.push(seed);
    while (!queue.empty()) {
      FaceId f = queue.front();
      queue.pop();
      for (auto [g, e] : adj[f]) {
        bool f_fwd = traverses(f, e.first, e.second);
        bool g_fwd = traverses(g, e.first, e.second);
        if (state[g] == 0) {
          if (f_fwd == g_fwd) std::swap(faces[g][1], faces[g][2]);
          state[g] = 1;
          queue.push(g);
        } else if (f_fwd == g_fwd) {
          return false;
        }
      }
    }
  }
  return true;
}

Mesh Mesh::build(std::vector<Vec3> positions, std::vector<Triangle> faces) {
  Mesh m;
  const std::size_t nv = positions.size();
  for (FaceId f = 0; f < faces.size(); ++f) {
    const auto& t = faces[f];
    for (VertexId v : t)
      if (v >= nv)
        throw ValidationError("face " + std::to_string(f) + " references vertex " +
                              std::to_string(v) + " out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw ValidationError("degenerate face " + std::to_string(f) + " repeats a vertex");
  }

  auto records = collect_half_edges(faces);
  m.face_edges_.assign(faces.size(), {kInvalid, kInvalid, kInvalid});
  for (std::size_t i = 0; i < records.size();) {
    std::size_t j = i;
    while (j < records.size() && records[j].lo == records[i].lo && records[j].hi == records[i].hi)
      ++j;
    const auto count = j - i;
    if (count > 2)
      throw ValidationError("non-manifold edge " + edge_str(records[i].lo, records[i].hi) +
                            " has " + std::to_string(count) + " incident faces");
    if (count == 2 && records[i].forward == records[i + 1].forward) {
      auto copy = faces;
      bool orientable = orient_consistently(copy, nv);
      throw ValidationError(orientable
                                ? "inconsistent face orientation at edge " +
                                      edge_str(records[i].lo, records[i].hi)
                                : "non-orientable surface");
    }
    const auto e = static_cast<EdgeId>(m.edges_.size());
    m.edges_.push_back({records[i].lo, records[i].hi});
    m.edge_faces_.push_back({records[i].face, count == 2 ? records[i + 1].face : kInvalid});
    for (std::size_t k = i; k < j; ++k) m.face_edges_[records[k].face][records[k].slot] = e;
    i = j;
  }

  // vertex -> faces
  m.face_offsets_.assign(nv + 1, 0);
  for (const auto& t : faces)
    for (VertexId v : t) ++m.face_offsets_[v + 1];
  for (std::size_t v = 0; v < nv; ++v) m.face_offsets_[v + 1] += m.face_offsets_[v];
  m.vertex_faces_.resize(m.face_offsets_[nv]);
  {
    auto cursor = m.face_offsets_;
    for (FaceId f = 0; f < faces.size(); ++f)
      for (VertexId v : faces[f]) m.vertex_faces_[cursor[v]++] = f;
  }

  // Ordered links. Each incident face (v, a, b) in orientation order
  // contributes the link edge a -> b; chaining them gives the link.
  m.link_offsets_.assign(nv + 1, 0);
  for (VertexId v = 0; v < nv; ++v) {
    auto deg = m.face_offsets_[v + 1] - m.face_offsets_[v];
    // boundary vertices have one more link vertex than faces; reserve generously
    m.link_offsets_[v + 1] = m.link_offsets_[v] + deg + 1;
  }
  m.link_vertices_.assign(m.link_offsets_[nv], kInvalid);
  m.link_spokes_.assign(m.link_offsets_[nv], kInvalid);
  m.link_closed_.assign(nv, 1);

  std::vector<std::pair<VertexId, VertexId>> arcs;
  std::vector<VertexId> chain;
  std::vector<std::uint32_t> sizes(nv, 0);
  for (VertexId v = 0; v < nv; ++v) {
    arcs.clear();
    for (auto k = m.face_offsets_[v]; k < m.face_offsets_[v + 1]; ++k) {
      const auto& t = faces[m.vertex_faces_[k]];
      int i = t[0] == v ? 0 : (t[1] == v ? 1 : 2);
      arcs.emplace_back(t[(i + 1) % 3], t[(i + 2) % 3]);
    }
    if (arcs.empty())
      throw ValidationError("vertex " + std::to_string(v) + " is not used by any face");
    std::sort(arcs.begin(), arcs.end());
    auto next_of = [&](VertexId a) -> VertexId {
      auto it = std::lower_bound(arcs.begin(), arcs.end(), std::make_pair(a, VertexId{0}));
      return (it != arcs.end() && it->first == a) ? it->second : kInvalid;
    };
    // chain start: a tail that is nobody's head (boundary) or any arc (interior)
    std::vector<VertexId> heads;
    heads.reserve(arcs.size());
    for (auto& a : arcs) heads.push_back(a.second);
    std::sort(heads.begin(), heads.end());
    VertexId start = arcs.front().first;
    bool closed = true;
    for (auto& a : arcs)
      if (!std::binary_search(heads.begin(), heads.end(), a.first)) {
        start = a.first;
        closed = false;
        break;
      }
    chain.clear();
    VertexId cur = start;
    chain.push_back(cur);
    for (std::size_t steps = 0; steps < arcs.size(); ++steps) {
      cur = next_of(cur);
      if (cur == kInvalid) break;
      if (closed && cur == start) break;
      chain.push_back(cur);
    }
    const std::size_t expected = closed ? arcs.size() : arcs.size() + 1;
    if (chain.size() != expected || (closed && cur != start))
      throw ValidationError("non-manifold vertex " + std::to_string(v) +
                            " (its link is not a single cycle or chain)");
    m.link_closed_[v] = closed ? 1 : 0;
    sizes[v] = static_cast<std::uint32_t>(chain.size());
    std::copy(chain.begin(), chain.end(), m.link_vertices_.begin() + m.link_offsets_[v]);
  }
  // compact CSR
  {
    std::vector<std::uint32_t> offsets(nv + 1, 0);
    for (VertexId v = 0; v < nv; ++v) offsets[v + 1] = offsets[v] + sizes[v];
    std::vector<VertexId> verts(offsets[nv]);
    for (VertexId v = 0; v < nv; ++v)
      std::copy_n(m.link_vertices_.begin() + m.link_offsets_[v], sizes[v],
                  verts.begin() + offsets[v]);
    m.link_offsets_ = std::move(offsets);
    m.link_vertices_ = std::move(verts);
    m.link_spokes_.assign(m.link_vertices_.size(), kInvalid);
  }

  m.positions_ = std::move(positions);
  m.faces_ = std::move(faces);

  for (VertexId v = 0; v < nv; ++v)
    for (auto k = m.link_offsets_[v]; k < m.link_offsets_[v + 1]; ++k)
      m.link_spokes_[k] = *m.find_edge(v, m.link_vertices_[k]);

  // boundary loops, following face orientation
  m.vertex_loop_.assign(nv, kInvalid);
  std::vector<VertexId> bnext(nv, kInvalid);
  for (EdgeId e = 0; e < m.edges_.size(); ++e) {
    if (!m.is_boundary_edge(e)) continue;
    const auto& t = m.faces_[m.edge_faces_[e][0]];
    auto [a, b] = m.edges_[e];
    bool fwd = false;
    for (int i = 0; i < 3; ++i)
      if (t[i] == a && t[(i + 1) % 3] == b) fwd = true;
    if (!fwd) std::swap(a, b);
    bnext[a] = b;
  }
  for (VertexId v = 0; v < nv; ++v) {
    if (bnext[v] == kInvalid || m.vertex_loop_[v] != kInvalid) continue;
    const auto id = static_cast<std::uint32_t>(m.loops_.size());
    std::vector<VertexId> loop;
    for (VertexId cur = v; m.vertex_loop_[cur] == kInvalid; cur = bnext[cur]) {
      m.vertex_loop_[cur] = id;
      loop.push_back(cur);
    }
    m.loops_.push_back(std::move(loop));
  }

  UnionFind uf(nv);
  for (const auto& e : m.edges_) uf.unite(e[0], e[1]);
  m.num_components_ = uf.compact(m.vertex_component_);
  return m;
}

std::optional<EdgeId> Mesh::find_edge(VertexId a, VertexId b) const {
  if (a >= num_vertices() || b >= num_vertices()) return std::nullopt;
  // during build() spokes may not yet be filled; fall back to face scan
  for (auto k = face_offsets_[a]; k < face_offsets_[a + 1]; ++k) {
    FaceId f = vertex_faces_[k];
    const auto& t = faces_[f];
    for (int i = 0; i < 3; ++i) {
      VertexId p = t[i];
      VertexId q = t[(i + 1) % 3];
      if ((p == a && q == b) || (p == b && q == a)) return face_edges_[f][i];
    }
  }
  return std::nullopt;
}

LinkView Mesh::link(VertexId v) const {
  const auto b = link_offsets_[v];
  const auto n = link_offsets_[v + 1] - b;
  return {std::span<const VertexId>(link_vertices_.data() + b, n),
          std::span<const EdgeId>(link_spokes_.data() + b, n), link_closed_[v] != 0};
}

std::span<const FaceId> Mesh::vertex_faces(VertexId v) const {
  const auto b = face_offsets_[v];
  return {vertex_faces_.data() + b, face_offsets_[v + 1] - b};
}

long Mesh::euler_characteristic() const {
  return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
         static_cast<long>(num_faces());
}

}  // namespace reeb
