// SPDX-License-Identifier: Apache-2.0
#include "reeb/augmented.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reeb/error.hpp"

namespace reeb {

std::vector<double> arc_length_table(const std::vector<double>& values, double delta) {
  if (values.size() < 2) throw InputError("arc length table needs at least one segment");
  std::vector<double> table;
  table.reserve(values.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    sum += std::max(std::abs(values[i + 1] - values[i]), delta);
    table.push_back(sum);
  }
  if (!(sum > 0.0)) throw InputError("degenerate arc: zero total length");
  return table;
}

std::vector<VertexId> embedding_path(const ReebArc& arc) {
  std::vector<VertexId> path;
  if (arc.embedding.empty()) return path;
  path.push_back(arc.embedding.front()[0]);
  for (const auto& e : arc.embedding) {
    if (e[0] != path.back())
      throw InternalError("arc " + std::to_string(arc.id) + " embedding is not a path");
    path.push_back(e[1]);
  }
  return path;
}

namespace {

double reparam_delta(const ScalarField& field) {
  return (field.max_value() - field.min_value()) * 1e-12;
}

std::vector<double> path_values(const std::vector<VertexId>& path, const ScalarField& field) {
  std::vector<double> values;
  values.reserve(path.size());
  for (VertexId v : path) values.push_back(field.value(v));
  return values;
}

Rank loop_rank(const Mesh& mesh, const ScalarField& field, std::uint32_t loop, bool want_max) {
  const auto& lp = mesh.boundary_loops().at(loop);
  Rank r = want_max ? 0 : kInvalid;
  for (VertexId v : lp) r = want_max ? std::max(r, field.rank(v)) : std::min(r, field.rank(v));
  return r;
}

// Thresholds whose level lies strictly inside the arc's open interval.
std::pair<Rank, Rank> interior_thresholds(const ReebGraph& graph, const Mesh& mesh,
                                          const ScalarField& field, const ReebArc& arc) {
  const auto& lo = graph.node(arc.lo);
  const auto& hi = graph.node(arc.hi);
  Rank first = lo.kind == NodeKind::BoundaryMin ? loop_rank(mesh, field, lo.loop, true) + 1
                                                : lo.level + 1;
  Rank last = hi.kind == NodeKind::BoundaryMax ? loop_rank(mesh, field, hi.loop, false)
                                               : hi.level;
  return {first, last};
}

}  // namespace

std::vector<double> arc_length_table(const ReebArc& arc, const ScalarField& field) {
  const auto path = embedding_path(arc);
  if (path.empty()) throw InputError("arc " + std::to_string(arc.id) + " has no embedding");
  return arc_length_table(path_values(path, field), reparam_delta(field));
}

Vec3 crossing_point(const Mesh& mesh, const ScalarField& field, EdgeId e, double level) {
  const auto& ab = mesh.edge(e);
  const double fa = field.value(ab[0]), fb = field.value(ab[1]);
  double s = 0.5;
  if (fa != fb) s = std::clamp((level - fa) / (fb - fa), 0.0, 1.0);
  const Vec3 a = mesh.position(ab[0]), b = mesh.position(ab[1]);
  return a + s * (b - a);
}

EmbeddedCircle point_to_circle(const ReebGraph& graph, const Mesh& mesh, const ScalarField& field,
                               const GraphPoint& p) {
  if (p.is_node()) throw InputError("graph point is a node; use node_to_set");
  if (!(p.t > 0.0 && p.t < 1.0))
    throw InputError("arc parameter must lie in (0,1), got " + std::to_string(p.t));
  if (p.arc >= graph.num_arcs()) throw InputError("unknown arc " + std::to_string(p.arc));
  const auto& arc = graph.arc(p.arc);
  const auto path = embedding_path(arc);
  if (path.empty()) throw InputError("arc " + std::to_string(p.arc) + " has no embedding");
  const auto values = path_values(path, field);
  const auto table = arc_length_table(values, reparam_delta(field));

  const double target = p.t * table.back();
  std::size_t k = std::lower_bound(table.begin(), table.end(), target) - table.begin();
  k = std::min(k, table.size() - 1);
  const double t0 = k == 0 ? 0.0 : table[k - 1];
  const double frac = std::clamp((target - t0) / (table[k] - t0), 0.0, 1.0);
  double level = values[k] + frac * (values[k + 1] - values[k]);

  Rank thr = field.level_below(level).threshold;
  thr = std::clamp(thr, field.rank(path[k]) + 1, field.rank(path[k + 1]));
  const auto [first, last] = interior_thresholds(graph, mesh, field, arc);
  if (first > last)
    throw InternalError("arc " + std::to_string(p.arc) + " has no interior level");
  thr = std::clamp(thr, first, last);

  // the path is rank-monotone, so exactly one edge straddles thr
  std::size_t j = k;
  while (j > 0 && field.rank(path[j]) >= thr) --j;
  while (j + 1 < path.size() - 1 && field.rank(path[j + 1]) < thr) ++j;
  const RankLevel rl{thr};
  if (!rl.straddles(field.rank(path[j]), field.rank(path[j + 1])))
    throw InternalError("arc " + std::to_string(p.arc) + " embedding misses its interior level");
  const auto seed = mesh.find_edge(path[j], path[j + 1]);
  if (!seed) throw InternalError("embedding edge is not a mesh edge");

  const double below = field.value(field.vertex_at(thr - 1));
  const double above = field.value(field.vertex_at(thr));
  level = std::clamp(level, below, above);

  EmbeddedCircle out;
  out.cycle = trace_level_cycle(mesh, field, *seed, rl);
  out.level = level;
  out.seed = *seed;
  out.arc = p.arc;
  out.t = p.t;
  out.polyline.reserve(out.cycle.edges.size());
  for (EdgeId e : out.cycle.edges) out.polyline.push_back(crossing_point(mesh, field, e, level));
  return out;
}

GraphPoint point_on_chain(const ReebGraph& graph, const ScalarField& field,
                          const std::vector<ArcId>& chain, double s) {
  if (chain.empty()) throw InputError("empty arc chain");
  if (!(s > 0.0 && s < 1.0)) throw InputError("chain parameter must lie in (0,1)");
  std::vector<double> lengths;
  double total = 0.0;
  for (ArcId a : chain) {
    lengths.push_back(arc_length_table(graph.arc(a), field).back());
    total += lengths.back();
  }
  double target = s * total;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (target < lengths[i] || i + 1 == chain.size()) {
      const double t = std::clamp(target / lengths[i], 1e-9, 1.0 - 1e-9);
      return GraphPoint::on_arc(chain[i], t);
    }
    target -= lengths[i];
  }
  return GraphPoint::on_arc(chain.back(), 0.5);
}

NodeSet node_to_set(const ReebGraph& graph, const Mesh& mesh, const ScalarField& field,
                    NodeId node) {
  if (node >= graph.num_nodes()) throw InputError("unknown node " + std::to_string(node));
  const auto& n = graph.node(node);
  NodeSet out;
  out.node = node;
  if (n.kind == NodeKind::Crossing) throw InputError("crossing nodes have no set");
  if (n.is_loop()) {
    out.loop_vertices = mesh.boundary_loops().at(n.loop);
    const auto& lp = out.loop_vertices;
    for (std::size_t i = 0; i < lp.size(); ++i)
      out.loop_edges.push_back(*mesh.find_edge(lp[i], lp[(i + 1) % lp.size()]));
    return out;
  }
  const VertexKind kind = n.kind == NodeKind::Min   ? VertexKind::Minimum
                          : n.kind == NodeKind::Max ? VertexKind::Maximum
                                                    : VertexKind::Saddle;
  out.critical = critical_set(mesh, field, n.vertex, kind);
  return out;
}

}  // namespace reeb
