// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "reeb/error.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/levelset.hpp"
#include "reeb/mesh_io.hpp"
#include "reeb/union_find.hpp"

using namespace reeb;

namespace {

std::vector<EdgeId> straddling(const Mesh& m, const ScalarField& f, RankLevel level) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < m.num_edges(); ++e)
    if (level.straddles(f.rank(m.edge(e)[0]), f.rank(m.edge(e)[1]))) out.push_back(e);
  return out;
}

// Components of straddling edges linked through shared faces.
std::size_t band_components(const Mesh& m, const std::vector<EdgeId>& edges) {
  std::vector<std::uint32_t> slot(m.num_edges(), kInvalid);
  for (std::uint32_t i = 0; i < edges.size(); ++i) slot[edges[i]] = i;
  UnionFind uf(edges.size());
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    for (FaceId face : m.edge_faces(edges[i])) {
      if (face == kInvalid) continue;
      for (EdgeId g : m.face_edges(face))
        if (slot[g] != kInvalid) uf.unite(i, slot[g]);
    }
  std::vector<std::uint32_t> labels;
  return uf.compact(labels);
}

std::vector<VertexId> saddles_of(const Mesh& m, const ScalarField& f) {
  std::vector<VertexId> out;
  for (const auto& c : build_inventory(m, f).sorted)
    if (c.kind == VertexKind::Saddle) out.push_back(c.vertex);
  return out;
}

}  // namespace

TEST_CASE("levels outside the field range are rejected") {
  const auto fx = make_cylinder(8);
  CHECK_THROWS_AS(cross_simplices(fx.mesh, fx.field, fx.field.min_value() - 1.0), InputError);
  CHECK_THROWS_AS(cross_simplices(fx.mesh, fx.field, fx.field.max_value() + 1.0), InputError);
}

TEST_CASE("a regular level on a cylinder is one annular band") {
  const auto fx = make_cylinder(8);
  const double t = 0.5 * (fx.field.min_value() + fx.field.max_value()) + 1e-7;
  const auto cr = cross_simplices(fx.mesh, fx.field, t);
  CHECK(cr.vertices.empty());
  CHECK(!cr.edges.empty());
  CHECK(cr.faces.size() == cr.edges.size());  // closed band: every face has two crossing edges
  CHECK(band_components(fx.mesh, cr.edges) == 1);
}

TEST_CASE("a level through a saddle contains its star") {
  const auto fx = make_torus(8);
  const auto saddles = saddles_of(fx.mesh, fx.field);
  REQUIRE(saddles.size() == 2);
  for (VertexId s : saddles) {
    const auto cr = cross_simplices(fx.mesh, fx.field, fx.field.value(s));
    CHECK(std::find(cr.vertices.begin(), cr.vertices.end(), s) != cr.vertices.end());
    for (FaceId face : fx.mesh.vertex_faces(s))
      CHECK(std::find(cr.faces.begin(), cr.faces.end(), face) != cr.faces.end());
  }
}

TEST_CASE("lower part of the closed band") {
  const auto fx = make_torus(8);
  const VertexId vmin = fx.field.vertex_at(0);
  const auto low = lower_level(fx.mesh, fx.field, vmin);
  CHECK(low.vertices == std::vector<VertexId>{vmin});

  // a regular vertex: its lower part is connected
  const VertexId v = fx.field.vertex_at(20);
  REQUIRE_FALSE(build_inventory(fx.mesh, fx.field).is_critical(v));
  const auto part = lower_level(fx.mesh, fx.field, v);
  std::vector<std::uint32_t> slot(fx.mesh.num_vertices(), kInvalid);
  for (std::uint32_t i = 0; i < part.vertices.size(); ++i) slot[part.vertices[i]] = i;
  UnionFind uf(part.vertices.size());
  for (EdgeId e : part.edges) uf.unite(slot[fx.mesh.edge(e)[0]], slot[fx.mesh.edge(e)[1]]);
  std::vector<std::uint32_t> labels;
  CHECK(uf.compact(labels) == 1);
}

TEST_CASE("critical sets on the torus") {
  const auto fx = make_torus(8);
  const auto saddles = saddles_of(fx.mesh, fx.field);
  REQUIRE(saddles.size() == 2);
  const auto split = critical_set(fx.mesh, fx.field, saddles[0]);
  const auto merge = critical_set(fx.mesh, fx.field, saddles[1]);
  CHECK(split.components.size() == 1);
  CHECK(merge.components.size() == 2);
  const auto vmin = critical_set(fx.mesh, fx.field, fx.field.vertex_at(0));
  REQUIRE(vmin.components.size() == 1);
  CHECK(vmin.components[0].crossing_edges.empty());
  CHECK(vmin.components[0].lower_link == std::vector<VertexId>{fx.field.vertex_at(0)});
  CHECK_THROWS_AS(critical_set(fx.mesh, fx.field, fx.field.vertex_at(20)), InputError);
}

TEST_CASE("tracing a cylinder level visits its band once") {
  const auto fx = make_cylinder(8);
  const RankLevel level{static_cast<Rank>(fx.field.size() / 2)};
  const auto band = straddling(fx.mesh, fx.field, level);
  for (EdgeId seed : {band.front(), band.back()}) {
    const auto c = trace_level_cycle(fx.mesh, fx.field, seed, level);
    CHECK(c.closed);
    std::vector<EdgeId> sorted = c.edges;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted == band);
  }
}

TEST_CASE("cycles of a two-component level stay in their component") {
  const auto fx = make_genus(2, 12);
  const auto inv = build_inventory(fx.mesh, fx.field);
  // a level just above the first saddle splits into two circles
  const Rank r = inv.sorted[1].rank + 1;
  const RankLevel level{r + 1};
  const auto cycles = level_cycles(fx.mesh, fx.field, level);
  REQUIRE(cycles.size() == 2);
  std::set<EdgeId> a(cycles[0].edges.begin(), cycles[0].edges.end());
  for (EdgeId e : cycles[1].edges) CHECK(a.count(e) == 0);
  CHECK(band_components(fx.mesh, cycles[0].edges) == 1);
  CHECK(band_components(fx.mesh, cycles[1].edges) == 1);
  CHECK(cycles[0].edges.size() + cycles[1].edges.size() ==
        straddling(fx.mesh, fx.field, level).size());
}

TEST_CASE("a level hitting the boundary traces an open chain") {
  const auto fx = make_disk(8);
  const ScalarField fx_x = field_from_axis(fx.mesh, Axis::X);
  const RankLevel level{static_cast<Rank>(fx_x.size() / 2)};
  const auto band = straddling(fx.mesh, fx_x, level);
  const auto c = trace_level_cycle(fx.mesh, fx_x, band.front(), level);
  CHECK_FALSE(c.closed);
  CHECK(fx.mesh.is_boundary_edge(c.edges.front()));
  CHECK(fx.mesh.is_boundary_edge(c.edges.back()));
  CHECK(c.edges.size() == band.size());
}

TEST_CASE("tracing from an edge off the level is an input error") {
  const auto fx = make_cylinder(8);
  const RankLevel level{static_cast<Rank>(fx.field.size() / 2)};
  EdgeId off = 0;
  while (level.straddles(fx.field.rank(fx.mesh.edge(off)[0]), fx.field.rank(fx.mesh.edge(off)[1])))
    ++off;
  CHECK_THROWS_AS(trace_level_cycle(fx.mesh, fx.field, off, level), InputError);
}
