// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "reeb/augmented.hpp"
#include "reeb/curves.hpp"
#include "reeb/error.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/reeb_seq.hpp"

using namespace reeb;
using Catch::Approx;

TEST_CASE("arc length tables") {
  CHECK(arc_length_table({0.0, 1.0, 3.0}) == std::vector<double>{1.0, 3.0});
  CHECK(arc_length_table({2.0, 5.0}) == std::vector<double>{3.0});
  const double delta = 1e-12;
  const auto t = arc_length_table({0.0, 1.0, 1.0}, delta);
  REQUIRE(t.size() == 2);
  CHECK(t[1] > t[0]);
  CHECK(t[1] - t[0] == Approx(delta).margin(1e-15));
  CHECK_THROWS_AS(arc_length_table({1.0, 1.0, 1.0}), InputError);
  CHECK_THROWS_AS(arc_length_table({1.0}), InputError);
}

TEST_CASE("cylinder midpoint circle sits at the length midpoint") {
  const auto fx = make_cylinder(8);
  const auto g = reeb_sequential(fx.mesh, fx.field);
  REQUIRE(g.num_arcs() == 1);
  const auto path = embedding_path(g.arc(0));
  const double lo = fx.field.value(path.front()), hi = fx.field.value(path.back());
  const auto c = point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(0, 0.5));
  CHECK(c.cycle.closed);
  CHECK(c.level == Approx(0.5 * (lo + hi)).margin(1e-9));
  CHECK(c.polyline.size() == c.cycle.edges.size());
  for (const auto& p : c.polyline) CHECK(p.z == Approx(c.level).margin(1e-9));
}

TEST_CASE("sphere levels are single circles") {
  const auto fx = make_sphere(8);
  const auto g = reeb_sequential(fx.mesh, fx.field);
  for (double t = 0.05; t < 1.0; t += 0.1) {
    const auto c = point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(0, t));
    CHECK(level_cycles(fx.mesh, fx.field, c.cycle.level).size() == 1);
  }
}

TEST_CASE("torus handle circle does not separate") {
  const auto fx = make_torus(12);
  const auto g = reeb_sequential(fx.mesh, fx.field);
  int handles = 0;
  for (const auto& a : g.arcs()) {
    if (g.node(a.lo).kind != NodeKind::Saddle || g.node(a.hi).kind != NodeKind::Saddle) continue;
    const auto c = point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(a.id, 0.5));
    const auto seg = cut_mesh(fx.mesh, fx.field, {c});
    CHECK(seg.segments.size() == 1);
    ++handles;
  }
  CHECK(handles == 2);
}

TEST_CASE("levels grow along an arc") {
  const auto fx = make_genus(2, 12);
  const auto g = reeb_sequential(fx.mesh, fx.field);
  for (const auto& a : g.arcs()) {
    double prev = -1e300;
    for (int i = 1; i < 20; ++i) {
      const auto c = point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(a.id, i / 20.0));
      CHECK(c.level >= prev);
      prev = c.level;
    }
  }
}

TEST_CASE("graph points must be interior") {
  const auto fx = make_sphere(8);
  const auto g = reeb_sequential(fx.mesh, fx.field);
  CHECK_THROWS_AS(point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(0, 0.0)), InputError);
  CHECK_THROWS_AS(point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(0, 1.0)), InputError);
  CHECK_THROWS_AS(point_to_circle(g, fx.mesh, fx.field, GraphPoint::at_node(0)), InputError);
  CHECK_THROWS_AS(point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(9, 0.5)), InputError);
}

TEST_CASE("nodes map to their sets") {
  SECTION("maximum") {
    const auto fx = make_sphere(8);
    const auto g = reeb_sequential(fx.mesh, fx.field);
    const auto set = node_to_set(g, fx.mesh, fx.field, 1);
    REQUIRE(set.critical);
    REQUIRE(set.critical->components.size() == 1);
    CHECK(set.critical->components[0].lower_link == std::vector<VertexId>{g.node(1).vertex});
  }
  SECTION("boundary loop") {
    const auto fx = make_cylinder(8);
    const auto g = reeb_sequential(fx.mesh, fx.field);
    for (NodeId n = 0; n < g.num_nodes(); ++n) {
      const auto set = node_to_set(g, fx.mesh, fx.field, n);
      CHECK_FALSE(set.critical);
      CHECK(set.loop_vertices == fx.mesh.boundary_loops()[g.node(n).loop]);
      CHECK(set.loop_edges.size() == set.loop_vertices.size());
    }
  }
  SECTION("merge saddle") {
    const auto fx = make_torus(8);
    const auto g = reeb_sequential(fx.mesh, fx.field);
    const auto set = node_to_set(g, fx.mesh, fx.field, 2);
    REQUIRE(set.critical);
    CHECK(set.critical->components.size() == 2);
  }
}
