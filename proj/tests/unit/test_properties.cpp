// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "reeb/augmented.hpp"
#include "reeb/fixtures.hpp"
#include "reeb/oracle.hpp"
#include "reeb/reeb_par.hpp"
#include "reeb/reeb_seq.hpp"

using namespace reeb;

namespace {

struct FixtureCase {
  const char* kind;
  int res;
};

const std::vector<FixtureCase> kSmall{{"sphere", 6},   {"torus", 8},  {"genus2", 8}, {"cylinder", 6},
                               {"disk", 6},     {"pants", 8},  {"monkey", 6}, {"two_component", 6}};

}  // namespace

TEST_CASE("property: engines agree with the sweep oracle") {
  for (const auto& s : kSmall) {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      const auto fx = gen_fixture(s.kind, s.res, seed);
      CAPTURE(s.kind, seed);
      const auto seq = reeb_sequential(fx.mesh, fx.field);
      CHECK(graphs_isomorphic(seq, sweep_reeb(fx.mesh, fx.field)).isomorphic);
      CHECK(graphs_isomorphic(seq, reeb_parallel(fx.mesh, fx.field, {3, 2})).isomorphic);
    }
  }
}

TEST_CASE("property: node levels increase along arcs") {
  for (const auto& s : kSmall) {
    const auto fx = gen_fixture(s.kind, s.res);
    CAPTURE(s.kind);
    for (const auto& g : {reeb_sequential(fx.mesh, fx.field), sweep_reeb(fx.mesh, fx.field)})
      for (const auto& a : g.arcs()) CHECK(g.node(a.lo).level < g.node(a.hi).level);
  }
}

TEST_CASE("property: nodes are exactly criticals and boundary loops") {
  for (const auto& s : kSmall) {
    const auto fx = gen_fixture(s.kind, s.res);
    CAPTURE(s.kind);
    const auto inv = build_inventory(fx.mesh, fx.field);
    const auto g = sweep_reeb(fx.mesh, fx.field);
    std::vector<VertexId> crit, nodes;
    std::size_t loops = 0;
    for (const auto& c : inv.sorted) crit.push_back(c.vertex);
    for (const auto& n : g.nodes()) {
      if (n.is_loop())
        ++loops;
      else
        nodes.push_back(n.vertex);
    }
    std::sort(crit.begin(), crit.end());
    std::sort(nodes.begin(), nodes.end());
    CHECK(nodes == crit);
    CHECK(loops == fx.mesh.boundary_loops().size());
  }
}

TEST_CASE("property: Euler relation on closed surfaces") {
  for (const auto& s : kSmall) {
    const auto fx = gen_fixture(s.kind, s.res);
    if (!fx.mesh.boundary_loops().empty()) continue;
    CAPTURE(s.kind);
    CHECK(build_inventory(fx.mesh, fx.field).euler_sum() == fx.mesh.euler_characteristic());
  }
}

TEST_CASE("property: level topology only changes at critical ranks") {
  for (const auto& s : kSmall) {
    const auto fx = gen_fixture(s.kind, s.res);
    CAPTURE(s.kind);
    const auto counts = level_component_counts(fx.mesh, fx.field);
    const auto inv = build_inventory(fx.mesh, fx.field);
    std::vector<std::uint8_t> critical(fx.field.size(), 0);
    for (const auto& c : inv.sorted) critical[c.rank] = 1;
    for (const auto& loop : fx.mesh.boundary_loops())
      for (VertexId v : loop) critical[fx.field.rank(v)] = 1;
    for (Rank t = 2; t < counts.size(); ++t)
      if (!critical[t - 1]) CHECK(counts[t] == counts[t - 1]);
  }
}

TEST_CASE("property: traced cycles straddle their level and start on the arc") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(1e-3, 1.0 - 1e-3);
  for (const auto& s : kSmall) {
    const auto fx = gen_fixture(s.kind, s.res);
    CAPTURE(s.kind);
    const auto g = reeb_sequential(fx.mesh, fx.field);
    for (int i = 0; i < 25; ++i) {
      const auto arc = static_cast<ArcId>(rng() % g.num_arcs());
      const auto c = point_to_circle(g, fx.mesh, fx.field, GraphPoint::on_arc(arc, unit(rng)));
      for (EdgeId e : c.cycle.edges) {
        const auto& ab = fx.mesh.edge(e);
        CHECK(c.cycle.level.straddles(fx.field.rank(ab[0]), fx.field.rank(ab[1])));
      }
      const auto& emb = g.arc(arc).embedding;
      CHECK(std::any_of(emb.begin(), emb.end(), [&](const EmbeddedEdge& e) {
        return fx.mesh.find_edge(e[0], e[1]) == c.seed;
      }));
    }
  }
}

TEST_CASE("property: runs are deterministic") {
  const auto fx = make_genus(3, 8);
  const auto a = to_json(reeb_sequential(fx.mesh, fx.field)).dump();
  CHECK(to_json(reeb_sequential(fx.mesh, fx.field)).dump() == a);
  const auto p1 = to_json(reeb_parallel(fx.mesh, fx.field, {4, 3})).dump();
  CHECK(to_json(reeb_parallel(fx.mesh, fx.field, {4, 3})).dump() == p1);
}

TEST_CASE("property: slabs cover every vertex once") {
  for (const auto& s : kSmall) {
    const auto fx = gen_fixture(s.kind, s.res);
    CAPTURE(s.kind);
    const auto inv = build_inventory(fx.mesh, fx.field);
    const auto plan = choose_cuts(fx.field, inv, 3, boundary_blocked_thresholds(fx.mesh, fx.field));
    const auto p = build_partition(fx.mesh, fx.field, inv, plan.thresholds);
    std::size_t total = 0;
    Rank next = 0;
    for (const auto& slab : p.slabs) {
      CHECK(slab.lo == next);
      next = slab.hi;
      total += slab.num_vertices();
    }
    CHECK(total == fx.mesh.num_vertices());
  }
}
