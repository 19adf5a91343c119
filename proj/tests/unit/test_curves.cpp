// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "reeb/curves.hpp"
#include "reeb/error.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/oracle.hpp"
#include "reeb/reeb_seq.hpp"

using namespace reeb;

namespace {

struct Case {
  Fixture fx;
  ReebGraph graph;
  explicit Case(Fixture f) : fx(std::move(f)), graph(reeb_sequential(fx.mesh, fx.field)) {}
};

bool has_segment(const Segmentation& s, long chi, std::size_t boundaries) {
  return std::any_of(s.segments.begin(), s.segments.end(), [&](const SegmentCensus& c) {
    return c.chi == chi && c.boundaries == boundaries;
  });
}

long total_chi(const Segmentation& s) {
  long sum = 0;
  for (const auto& c : s.segments) sum += c.chi;
  return sum;
}

}  // namespace

TEST_CASE("cutting systems") {
  SECTION("sphere has none") {
    Case c(make_sphere(8));
    CHECK(cutting_system(c.graph, c.fx.mesh, c.fx.field).empty());
  }
  SECTION("torus: one circle, connected cylinder") {
    Case c(make_torus(12));
    const auto circles = cutting_system(c.graph, c.fx.mesh, c.fx.field);
    REQUIRE(circles.size() == 1);
    const auto seg = cut_mesh(c.fx.mesh, c.fx.field, circles);
    REQUIRE(seg.segments.size() == 1);
    CHECK(seg.segments[0].chi == 0);
    CHECK(seg.segments[0].boundaries == 2);
  }
  SECTION("genus 2: two circles, four boundary loops, chi -2") {
    Case c(make_genus(2, 12));
    const auto circles = cutting_system(c.graph, c.fx.mesh, c.fx.field);
    REQUIRE(circles.size() == 2);
    const auto seg = cut_mesh(c.fx.mesh, c.fx.field, circles);
    REQUIRE(seg.segments.size() == 1);
    CHECK(seg.segments[0].chi == -2);
    CHECK(seg.segments[0].boundaries == 4);
    CHECK(sweep_reeb(seg.mesh, ScalarField(seg.values)).betti1() == 0);
  }
}

TEST_CASE("deformation retracts") {
  SECTION("sphere retracts to nothing") {
    Case c(make_sphere(8));
    CHECK(deformation_retract(c.graph).empty());
  }
  SECTION("torus retracts to a single loop") {
    Case c(make_torus(8));
    const auto r = deformation_retract(c.graph);
    CHECK(r.nodes.size() == 1);
    REQUIRE(r.edges.size() == 1);
    CHECK(r.edges[0].a == r.edges[0].b);
    CHECK(r.edges[0].chain.size() == 2);
    CHECK(r.betti1() == 1);
  }
  SECTION("genus 2 keeps two loops and no valence 1 or 2") {
    Case c(make_genus(2, 12));
    const auto r = deformation_retract(c.graph);
    CHECK(r.betti1() == 2);
    for (NodeId n : r.nodes) {
      CHECK(r.degree(n) != 1);
      CHECK(r.degree(n) != 2);
    }
  }
  SECTION("boundary leaves survive") {
    Case c(make_pants(12));
    const auto r = deformation_retract(c.graph);
    CHECK(r.nodes.size() == 4);
    CHECK(r.edges.size() == 3);
  }
  SECTION("back maps cover the kept arcs exactly once") {
    Case c(make_genus(3, 12));
    const auto r = deformation_retract(c.graph);
    std::vector<ArcId> all;
    for (const auto& e : r.edges) all.insert(all.end(), e.chain.begin(), e.chain.end());
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }
}

TEST_CASE("pants decompositions") {
  SECTION("genus 2 splits into two pairs of pants") {
    Case c(make_genus(2, 12));
    const auto circles = pants_curves(c.graph, c.fx.mesh, c.fx.field);
    REQUIRE(circles.size() == 3);
    const auto seg = cut_mesh(c.fx.mesh, c.fx.field, circles);
    REQUIRE(seg.segments.size() == 2);
    for (const auto& s : seg.segments) {
      CHECK(s.chi == -1);
      CHECK(s.boundaries == 3);
    }
  }
  SECTION("torus becomes one cylinder") {
    Case c(make_torus(12));
    const auto circles = pants_curves(c.graph, c.fx.mesh, c.fx.field);
    REQUIRE(circles.size() == 1);
    const auto seg = cut_mesh(c.fx.mesh, c.fx.field, circles);
    REQUIRE(seg.segments.size() == 1);
    CHECK(seg.segments[0].chi == 0);
    CHECK(seg.segments[0].boundaries == 2);
  }
  SECTION("sphere has none") {
    Case c(make_sphere(8));
    CHECK(pants_curves(c.graph, c.fx.mesh, c.fx.field).empty());
  }
}

TEST_CASE("branch curves bound disks") {
  SECTION("torus: one per extremal arc") {
    Case c(make_torus(12));
    CHECK(branch_curves(c.graph, c.fx.mesh, c.fx.field).size() == 2);
  }
  SECTION("monkey fixture: one per extremum") {
    Case c(make_monkey(12));
    const auto circles = branch_curves(c.graph, c.fx.mesh, c.fx.field);
    CHECK(circles.size() == 6);
    for (const auto& circle : circles) {
      const auto seg = cut_mesh(c.fx.mesh, c.fx.field, {circle});
      CHECK(seg.segments.size() == 2);
      CHECK(has_segment(seg, 1, 1));
    }
  }
  SECTION("offset must be interior") {
    Case c(make_torus(8));
    CHECK_THROWS_AS(branch_curves(c.graph, c.fx.mesh, c.fx.field, 1.0), InputError);
  }
}

TEST_CASE("mesh cutting") {
  SECTION("cylinder cut at mid height gives two cylinders") {
    Case c(make_cylinder(8));
    const auto circle = point_to_circle(c.graph, c.fx.mesh, c.fx.field, GraphPoint::on_arc(0, 0.5));
    const auto seg = cut_mesh(c.fx.mesh, c.fx.field, {circle});
    REQUIRE(seg.segments.size() == 2);
    for (const auto& s : seg.segments) {
      CHECK(s.chi == 0);
      CHECK(s.boundaries == 2);
    }
  }
  SECTION("the same circle twice is rejected") {
    Case c(make_cylinder(8));
    const auto circle = point_to_circle(c.graph, c.fx.mesh, c.fx.field, GraphPoint::on_arc(0, 0.5));
    CHECK_THROWS_AS(cut_mesh(c.fx.mesh, c.fx.field, {circle, circle}), InputError);
  }
  SECTION("several circles on one edge at different levels") {
    Case c(make_cylinder(8));
    std::vector<EmbeddedCircle> circles;
    for (double t : {0.2, 0.4, 0.6, 0.8})
      circles.push_back(point_to_circle(c.graph, c.fx.mesh, c.fx.field, GraphPoint::on_arc(0, t)));
    const auto seg = cut_mesh(c.fx.mesh, c.fx.field, circles);
    CHECK(seg.segments.size() == 5);
    CHECK(total_chi(seg) == 0);
  }
  SECTION("labels partition the faces and chi adds up") {
    Case c(make_genus(2, 12));
    const auto circles = pants_curves(c.graph, c.fx.mesh, c.fx.field);
    const auto seg = cut_mesh(c.fx.mesh, c.fx.field, circles);
    CHECK(seg.labels.size() == seg.mesh.num_faces());
    CHECK(total_chi(seg) == c.fx.mesh.euler_characteristic());
    for (FaceId f = 0; f < seg.mesh.num_faces(); ++f) CHECK(seg.origin_face[f] < c.fx.mesh.num_faces());
  }
}
