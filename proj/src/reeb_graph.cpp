// SPDX-License-Identifier: Apache-2.0
#include "reeb/reeb_graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <tuple>

#include "reeb/error.hpp"
#include "reeb/union_find.hpp"

namespace reeb {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Min: return "min";
    case NodeKind::Max: return "max";
    case NodeKind::Saddle: return "saddle";
    case NodeKind::BoundaryMin: return "boundary_min";
    case NodeKind::BoundaryMax: return "boundary_max";
    case NodeKind::Crossing: return "crossing";
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& s) {
  for (auto k : {NodeKind::Min, NodeKind::Max, NodeKind::Saddle, NodeKind::BoundaryMin,
                 NodeKind::BoundaryMax, NodeKind::Crossing})
    if (s == to_string(k)) return k;
  throw InputError("unknown node kind '" + s + "'");
}

NodeId ReebGraph::add_node(NodeKind kind, VertexId vertex, std::uint32_t loop, Rank level) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({id, kind, vertex, loop, level});
  return id;
}

ArcId ReebGraph::add_arc(NodeId lo, NodeId hi, std::vector<EmbeddedEdge> embedding) {
  if (lo >= nodes_.size() || hi >= nodes_.size())
    throw InternalError("arc endpoint out of range");
  const auto id = static_cast<ArcId>(arcs_.size());
  arcs_.push_back({id, lo, hi, std::move(embedding)});
  return id;
}

std::vector<std::uint32_t> ReebGraph::degrees() const {
  std::vector<std::uint32_t> deg(nodes_.size(), 0);
  for (const auto& a : arcs_) {
    ++deg[a.lo];
    ++deg[a.hi];
  }
  return deg;
}

std::size_t ReebGraph::num_components() const {
  UnionFind uf(nodes_.size());
  for (const auto& a : arcs_) uf.unite(a.lo, a.hi);
  std::vector<std::uint32_t> labels;
  return uf.compact(labels);
}

long ReebGraph::betti1() const {
  return static_cast<long>(arcs_.size()) - static_cast<long>(nodes_.size()) +
         static_cast<long>(num_components());
}

void ReebGraph::canonicalize() {
  std::vector<NodeId> order(nodes_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const auto& x = nodes_[a];
    const auto& y = nodes_[b];
    return std::tie(x.level, x.kind, x.vertex, x.loop) < std::tie(y.level, y.kind, y.vertex, y.loop);
  });
  std::vector<NodeId> remap(nodes_.size());
  std::vector<ReebNode> nodes(nodes_.size());
  for (NodeId i = 0; i < order.size(); ++i) {
    remap[order[i]] = i;
    nodes[i] = nodes_[order[i]];
    nodes[i].id = i;
  }
  nodes_ = std::move(nodes);
  for (auto& a : arcs_) {
    a.lo = remap[a.lo];
    a.hi = remap[a.hi];
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const ReebArc& x, const ReebArc& y) {
    return std::tie(x.lo, x.hi, x.embedding) < std::tie(y.lo, y.hi, y.embedding);
  });
  for (ArcId i = 0; i < arcs_.size(); ++i) arcs_[i].id = i;
}

bool operator==(const ReebNode& a, const ReebNode& b) {
  return std::tie(a.id, a.kind, a.vertex, a.loop, a.level) ==
         std::tie(b.id, b.kind, b.vertex, b.loop, b.level);
}

bool operator==(const ReebArc& a, const ReebArc& b) {
  return std::tie(a.id, a.lo, a.hi, a.embedding) == std::tie(b.id, b.lo, b.hi, b.embedding);
}

bool operator==(const ReebGraph& a, const ReebGraph& b) {
  return a.nodes_ == b.nodes_ && a.arcs_ == b.arcs_;
}

nlohmann::json to_json(const ReebGraph& graph) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : graph.nodes()) {
    nlohmann::json j = {{"id", n.id}, {"kind", to_string(n.kind)}, {"level", n.level}};
    if (n.vertex != kInvalid) j["vertex"] = n.vertex;
    if (n.loop != kInvalid) j["loop"] = n.loop;
    nodes.push_back(std::move(j));
  }
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : graph.arcs())
    arcs.push_back({{"id", a.id}, {"lo", a.lo}, {"hi", a.hi}, {"embedding", a.embedding}});
  return {{"nodes", std::move(nodes)}, {"arcs", std::move(arcs)}};
}

ReebGraph graph_from_json(const nlohmann::json& doc) {
  ReebGraph g;
  try {
    const auto& nodes = doc.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (n.at("id").get<std::size_t>() != i) throw InputError("node ids must be 0..n-1 in order");
      g.add_node(node_kind_from_string(n.at("kind").get<std::string>()),
                 n.value("vertex", kInvalid), n.value("loop", kInvalid),
                 n.at("level").get<Rank>());
    }
    for (const auto& a : doc.at("arcs"))
      g.add_arc(a.at("lo").get<NodeId>(), a.at("hi").get<NodeId>(),
                a.value("embedding", std::vector<EmbeddedEdge>{}));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed graph JSON: ") + e.what());
  } catch (const InternalError& e) {
    throw InputError(std::string("malformed graph JSON: ") + e.what());
  }
  return g;
}

void write_dot(std::ostream& out, const ReebGraph& graph) {
  out << "graph reeb {\n  rankdir=BT;\n";
  for (const auto& n : graph.nodes()) {
    out << "  n" << n.id << " [label=\"" << to_string(n.kind);
    if (n.vertex != kInvalid) out << " v" << n.vertex;
    if (n.loop != kInvalid) out << " loop" << n.loop;
    out << "\\nrank " << n.level << "\"];\n";
  }
  for (const auto& a : graph.arcs())
    out << "  n" << a.lo << " -- n" << a.hi << " [label=\"" << a.embedding.size() << "\"];\n";
  out << "}\n";
}

}  // namespace reeb
