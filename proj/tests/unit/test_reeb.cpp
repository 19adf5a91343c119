// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "reeb/error.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/oracle.hpp"
#include "reeb/reeb_par.hpp"
#include "reeb/reeb_seq.hpp"

using namespace reeb;

namespace {

std::map<NodeKind, int> kind_counts(const ReebGraph& g) {
  std::map<NodeKind, int> out;
  for (const auto& n : g.nodes()) ++out[n.kind];
  return out;
}

struct Engine {
  CriticalInventory inv;
  BoundaryReport boundary;
  TerminationIndex index;
  EngineView view;

  Engine(const Fixture& fx)
      : inv(build_inventory(fx.mesh, fx.field)),
        boundary(require_clean_boundary(fx.mesh, fx.field)),
        index(build_termination_index(fx.mesh, fx.field, inv)),
        view(EngineView::whole(fx.mesh, fx.field, inv, boundary, index)) {}

  std::size_t paths_from(std::size_t slot) const {
    std::vector<AscendingPath> out;
    start_paths_at_critical(view, slot, out);
    return out.size();
  }
};

// Field of n values 0..n-1 on a dummy set of vertices, with the listed
// ranks marked critical.
struct SyntheticRanks {
  ScalarField field;
  CriticalInventory inv;

  SyntheticRanks(std::size_t n, const std::vector<Rank>& critical)
      : field([n] {
          std::vector<double> v(n);
          for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
          return v;
        }()) {
    inv.vertex_slot.assign(n, kInvalid);
    for (Rank r : critical) {
      inv.vertex_slot[r] = static_cast<std::uint32_t>(inv.sorted.size());
      inv.sorted.push_back({r, r, VertexKind::Saddle, 1});
    }
  }
};

}  // namespace

TEST_CASE("ascending paths leave each upper link run once") {
  SECTION("minimum starts one path") {
    const auto fx = make_torus(8);
    Engine e(fx);
    CHECK(e.paths_from(0) == 1);
  }
  SECTION("split saddle starts two paths") {
    const auto fx = make_torus(8);
    Engine e(fx);
    REQUIRE(e.inv.sorted[1].kind == VertexKind::Saddle);
    CHECK(e.paths_from(1) == 2);
    CHECK(e.paths_from(2) == 2);  // merge saddle: second path is discarded later
  }
  SECTION("multiplicity-2 saddle starts three paths") {
    const auto fx = make_monkey(12);
    Engine e(fx);
    std::size_t monkeys = 0;
    for (std::size_t s = 0; s < e.inv.sorted.size(); ++s) {
      if (e.inv.sorted[s].kind != VertexKind::Saddle) continue;
      CHECK(e.inv.sorted[s].multiplicity == 2);
      CHECK(e.paths_from(s) == 3);
      ++monkeys;
    }
    CHECK(monkeys == 2);
  }
}

TEST_CASE("a path reaching the top stops at the maximum") {
  const auto fx = make_sphere(8);
  Engine e(fx);
  auto paths = start_paths(e.view);
  REQUIRE(paths.size() == 1);
  auto& p = paths[0];
  while (p.running()) advance_path(p, e.view);
  CHECK(p.status.kind == TerminalKind::Critical);
  CHECK(e.index.slot_of_component[p.status.index] == e.inv.sorted.size() - 1);
  CHECK(p.tip() == fx.field.vertex_at(static_cast<Rank>(fx.field.size() - 1)));
}

TEST_CASE("second arrival at a component adds no arc") {
  const auto fx = make_sphere(8);
  Engine e(fx);
  VisitState visited(e.index.num_components(), 0, 0);
  ReebGraph g;
  add_base_nodes(g, fx.mesh, fx.field, e.inv, e.boundary);
  auto paths = start_paths(e.view);
  auto p = paths[0];
  while (p.running()) advance_path(p, e.view);
  auto q = p;
  CHECK(terminate_and_connect(p, e.view, visited, g));
  CHECK_FALSE(terminate_and_connect(q, e.view, visited, g));
  CHECK(g.num_arcs() == 1);
}

TEST_CASE("sequential graphs of basic fixtures") {
  SECTION("sphere: 2 nodes, 1 arc") {
    const auto fx = make_sphere(8);
    const auto g = reeb_sequential(fx.mesh, fx.field);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_arcs() == 1);
  }
  SECTION("torus: 4 nodes, 4 arcs, one loop") {
    const auto fx = make_torus(8);
    const auto g = reeb_sequential(fx.mesh, fx.field);
    CHECK(g.num_nodes() == 4);
    CHECK(g.num_arcs() == 4);
    CHECK(g.betti1() == 1);
  }
  SECTION("cylinder: 2 boundary nodes, 1 arc") {
    const auto fx = make_cylinder(8);
    const auto g = reeb_sequential(fx.mesh, fx.field);
    const auto k = kind_counts(g);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_arcs() == 1);
    CHECK(k.at(NodeKind::BoundaryMin) == 1);
    CHECK(k.at(NodeKind::BoundaryMax) == 1);
  }
  SECTION("misplaced boundary loop is a validation error") {
    const auto fx = make_misplaced_loop(8);
    CHECK_THROWS_AS(reeb_sequential(fx.mesh, fx.field), ValidationError);
  }
}

TEST_CASE("arc embeddings ascend from the lower node") {
  const auto fx = make_genus(2, 12);
  const auto g = reeb_sequential(fx.mesh, fx.field);
  for (const auto& a : g.arcs()) {
    REQUIRE_FALSE(a.embedding.empty());
    CHECK(fx.field.rank(a.embedding.front()[0]) >= g.node(a.lo).level);
    for (std::size_t i = 0; i < a.embedding.size(); ++i) {
      const auto& e = a.embedding[i];
      CHECK(fx.mesh.find_edge(e[0], e[1]).has_value());
      CHECK(fx.field.rank(e[0]) < fx.field.rank(e[1]));
      if (i > 0) CHECK(a.embedding[i - 1][1] == e[0]);
    }
  }
}

TEST_CASE("cut placement") {
  SECTION("no cuts requested") {
    SyntheticRanks s(100, {0, 99});
    CHECK(choose_cuts(s.field, s.inv, 0).thresholds.empty());
  }
  SECTION("three cuts at quartiles") {
    SyntheticRanks s(100, {0, 10, 35, 60, 85, 99});
    const auto plan = choose_cuts(s.field, s.inv, 3);
    CHECK(plan.thresholds == std::vector<Rank>{25, 50, 75});
    CHECK(plan.warnings.empty());
  }
  SECTION("one cut between saddles at ranks 40 and 60") {
    SyntheticRanks s(100, {0, 40, 60, 99});
    CHECK(choose_cuts(s.field, s.inv, 1).thresholds == std::vector<Rank>{50});
  }
  SECTION("cuts avoid critical ranks") {
    SyntheticRanks s(100, {0, 49, 50, 99});
    const auto plan = choose_cuts(s.field, s.inv, 1);
    REQUIRE(plan.thresholds.size() == 1);
    CHECK(plan.thresholds[0] == 48);
  }
  SECTION("unplaceable cuts are dropped with a warning") {
    std::vector<Rank> all;
    for (Rank r = 0; r < 6; ++r) all.push_back(r);
    SyntheticRanks s(6, all);
    const auto plan = choose_cuts(s.field, s.inv, 2);
    CHECK(plan.thresholds.empty());
    CHECK(plan.warnings.size() == 2);
  }
}

TEST_CASE("partitions") {
  SECTION("cylinder with one middle cut") {
    const auto fx = make_cylinder(8);
    const auto inv = build_inventory(fx.mesh, fx.field);
    const Rank mid = static_cast<Rank>(fx.field.size() / 2);
    const auto p = build_partition(fx.mesh, fx.field, inv, {mid});
    CHECK(p.slabs.size() == 2);
    CHECK(p.cycles.size() == 1);
    CHECK(p.slabs[0].num_vertices() + p.slabs[1].num_vertices() == fx.mesh.num_vertices());
  }
  SECTION("torus cut between its saddles crosses two cycles") {
    const auto fx = make_torus(16);
    const auto inv = build_inventory(fx.mesh, fx.field);
    const Rank mid = (inv.sorted[1].rank + inv.sorted[2].rank) / 2;
    const auto p = build_partition(fx.mesh, fx.field, inv, {mid});
    CHECK(p.slabs.size() == 2);
    CHECK(p.cycles.size() == 2);
  }
  SECTION("no cuts: one slab") {
    const auto fx = make_sphere(8);
    const auto inv = build_inventory(fx.mesh, fx.field);
    const auto p = build_partition(fx.mesh, fx.field, inv, {});
    REQUIRE(p.slabs.size() == 1);
    CHECK(p.slabs[0].num_vertices() == fx.mesh.num_vertices());
  }
}

TEST_CASE("crossing map holds at most two nodes per cut edge") {
  CrossingMap g;
  g.insert(0, 7, 1);
  g.insert(1, 7, 5);
  g.insert(0, 7, 2);
  CHECK(g.get(0, 7) == std::vector<NodeId>{1, 2});
  CHECK(g.get(1, 7) == std::vector<NodeId>{5});
  CHECK(g.get(2, 7).empty());
  CHECK_THROWS_AS(g.insert(0, 7, 3), InternalError);
}

TEST_CASE("parallel pipeline") {
  SECTION("one worker is bit-identical to sequential") {
    const auto fx = make_genus(2, 8);
    const auto s = reeb_sequential(fx.mesh, fx.field);
    const auto p = reeb_parallel(fx.mesh, fx.field, {1, -1});
    CHECK(p == s);
    CHECK(to_json(p).dump() == to_json(s).dump());
  }
  SECTION("two slabs of a sphere glue to one arc") {
    const auto fx = make_sphere(8);
    ParallelReport report;
    const auto p = reeb_parallel(fx.mesh, fx.field, {2, 1}, &report);
    CHECK(report.thresholds.size() == 1);
    CHECK(p.num_nodes() == 2);
    CHECK(p.num_arcs() == 1);
    CHECK(graphs_isomorphic(p, reeb_sequential(fx.mesh, fx.field)).isomorphic);
  }
  SECTION("torus cut through both handle cycles") {
    const auto fx = make_torus(16);
    ParallelReport report;
    const auto p = reeb_parallel(fx.mesh, fx.field, {2, 3}, &report);
    CHECK(p.betti1() == 1);
    CHECK(p.num_nodes() == 4);
    CHECK(graphs_isomorphic(p, reeb_sequential(fx.mesh, fx.field)).isomorphic);
  }
  SECTION("six workers") {
    const auto fx = make_genus(3, 12);
    const auto p = reeb_parallel(fx.mesh, fx.field, {6, -1});
    CHECK(graphs_isomorphic(p, reeb_sequential(fx.mesh, fx.field)).isomorphic);
  }
}

TEST_CASE("sweep oracle") {
  SECTION("sphere is a path of two nodes") {
    const auto fx = make_sphere(8);
    const auto g = sweep_reeb(fx.mesh, fx.field);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_arcs() == 1);
  }
  SECTION("torus: min and max hang off a two-arc loop") {
    const auto fx = make_torus(8);
    const auto g = sweep_reeb(fx.mesh, fx.field);
    CHECK(g.num_nodes() == 4);
    CHECK(g.num_arcs() == 4);
    CHECK(g.degrees() == std::vector<std::uint32_t>{1, 3, 3, 1});
    CHECK(g.betti1() == 1);
  }
  SECTION("double torus has six critical nodes and two loops") {
    const auto fx = make_genus(2, 12);
    const auto g = sweep_reeb(fx.mesh, fx.field);
    CHECK(g.num_nodes() == 6);
    CHECK(g.num_arcs() == 7);
    CHECK(g.betti1() == 2);
  }
  SECTION("pants has three boundary nodes and a saddle") {
    const auto fx = make_pants(12);
    const auto k = kind_counts(sweep_reeb(fx.mesh, fx.field));
    CHECK(k.at(NodeKind::BoundaryMin) == 1);
    CHECK(k.at(NodeKind::BoundaryMax) == 2);
    CHECK(k.at(NodeKind::Saddle) == 1);
  }
  SECTION("size guard") {
    const auto fx = make_torus(240);
    REQUIRE(fx.mesh.num_vertices() > kSweepVertexLimit);
    CHECK_THROWS_AS(sweep_reeb(fx.mesh, fx.field), InputError);
  }
}

TEST_CASE("isomorphism checker") {
  const auto torus = make_torus(8);
  const auto sphere = make_sphere(8);
  const auto gt = reeb_sequential(torus.mesh, torus.field);
  const auto gs = reeb_sequential(sphere.mesh, sphere.field);
  CHECK(graphs_isomorphic(gt, gt).isomorphic);
  const auto r = graphs_isomorphic(gt, gs);
  CHECK_FALSE(r.isomorphic);
  CHECK_FALSE(r.witness.empty());
  CHECK(graphs_isomorphic(gt, reeb_parallel(torus.mesh, torus.field, {3, 2})).isomorphic);
}

TEST_CASE("graph JSON round trip") {
  const auto fx = make_pants(12);
  const auto g = reeb_sequential(fx.mesh, fx.field);
  const auto back = graph_from_json(nlohmann::json::parse(to_json(g).dump()));
  CHECK(back == g);
  CHECK(graphs_isomorphic(g, back).isomorphic);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"nodes": 3})")), InputError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(
                      R"({"nodes": [{"id": 0, "kind": "min", "level": 0}], "arcs": [{"lo": 0, "hi": 4}]})")),
                  InputError);
  std::ostringstream dot;
  write_dot(dot, g);
  CHECK(dot.str().find("graph") != std::string::npos);
}
