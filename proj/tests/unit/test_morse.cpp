// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "reeb/error.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/morse.hpp"

using namespace reeb;

namespace {

// center 0 at value 0, ring vertex i at ring[i], apex far below
ScalarField ring_field(const std::vector<double>& ring) {
  std::vector<double> v{0.0};
  v.insert(v.end(), ring.begin(), ring.end());
  v.push_back(-10.0);
  return ScalarField(std::move(v));
}

}  // namespace

TEST_CASE("cone apex below its whole link is a minimum") {
  const Mesh m = test::bipyramid(6);
  const auto c = classify_vertex(m, ring_field({1, 2, 3, 4, 5, 6}), 0);
  CHECK(c.kind == VertexKind::Minimum);
  CHECK(c.mixed_count == 0);
}

TEST_CASE("alternating six-vertex link is a monkey saddle") {
  const Mesh m = test::bipyramid(6);
  const auto c = classify_vertex(m, ring_field({1, -1, 2, -2, 3, -3}), 0);
  CHECK(c.kind == VertexKind::Saddle);
  CHECK(c.mixed_count == 6);
  CHECK(c.multiplicity == 2);
  CHECK(c.upper_components.size() == 3);
  CHECK(c.lower_component_count == 3);
}

TEST_CASE("one contiguous upper arc is regular") {
  const Mesh m = test::bipyramid(6);
  const auto c = classify_vertex(m, ring_field({1, 2, 3, -1, -2, -3}), 0);
  CHECK(c.kind == VertexKind::Regular);
  CHECK(c.mixed_count == 2);
}

TEST_CASE("simple saddle") {
  const Mesh m = test::bipyramid(6);
  const auto c = classify_vertex(m, ring_field({1, 2, -1, 3, -2, -3}), 0);
  CHECK(c.kind == VertexKind::Saddle);
  CHECK(c.multiplicity == 1);
  CHECK(c.upper_components.size() == 2);
}

TEST_CASE("critical census on closed fixtures") {
  SECTION("upright torus 8x8: 1 min, 2 saddles, 1 max") {
    const auto fx = make_torus(8);
    const auto inv = build_inventory(fx.mesh, fx.field);
    CHECK(inv.minima == 1);
    CHECK(inv.saddles == 2);
    CHECK(inv.maxima == 1);
  }
  SECTION("sphere: 1 min, 1 max") {
    const auto fx = make_sphere(8);
    const auto inv = build_inventory(fx.mesh, fx.field);
    CHECK(inv.minima == 1);
    CHECK(inv.maxima == 1);
    CHECK(inv.saddles == 0);
  }
  SECTION("tetrahedron under any ordering: 1 min, 1 max") {
    const Mesh m = test::tetrahedron();
    for (const auto& v : std::vector<std::vector<double>>{{0, 1, 2, 3}, {3, 1, 0, 2}, {1, 1, 1, 1}}) {
      const auto inv = build_inventory(m, ScalarField(v));
      CHECK(inv.minima == 1);
      CHECK(inv.maxima == 1);
      CHECK(inv.saddles == 0);
    }
  }
  SECTION("monkey fixture: two multiplicity-2 saddles") {
    const auto fx = make_monkey(12);
    const auto inv = build_inventory(fx.mesh, fx.field);
    CHECK(inv.minima == 3);
    CHECK(inv.maxima == 3);
    CHECK(inv.saddles == 2);
    CHECK(inv.total_multiplicity == 4);
  }
}

TEST_CASE("inventory is identical across worker counts") {
  const auto fx = make_genus(2, 8);
  const auto a = build_inventory(fx.mesh, fx.field, 1);
  const auto b = build_inventory(fx.mesh, fx.field, 4);
  REQUIRE(a.sorted.size() == b.sorted.size());
  for (std::size_t i = 0; i < a.sorted.size(); ++i) {
    CHECK(a.sorted[i].vertex == b.sorted[i].vertex);
    CHECK(a.sorted[i].multiplicity == b.sorted[i].multiplicity);
  }
}

TEST_CASE("boundary admissibility") {
  CHECK(validate_morse_boundary(make_cylinder(8).mesh, make_cylinder(8).field).clean());
  const auto disk = make_disk(8);
  CHECK(validate_morse_boundary(disk.mesh, disk.field).clean());
  const auto bad = make_misplaced_loop(8);
  const auto report = validate_morse_boundary(bad.mesh, bad.field);
  CHECK_FALSE(report.clean());
  CHECK_THROWS_AS(require_clean_boundary(bad.mesh, bad.field), ValidationError);
}
