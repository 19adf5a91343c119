// SPDX-License-Identifier: Apache-2.0
#include "reeb/morse.hpp"

#include <algorithm>
#include <limits>

#include "reeb/error.hpp"
#include "reeb/parallel.hpp"

namespace reeb {

const char* to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::Regular: return "regular";
    case VertexKind::Minimum: return "min";
    case VertexKind::Maximum: return "max";
    case VertexKind::Saddle: return "saddle";
    case VertexKind::BoundaryRegular: return "boundary";
  }
  return "?";
}

VertexClass classify_vertex(const Mesh& mesh, const ScalarField& field, VertexId v) {
  VertexClass out;
  const auto link = mesh.link(v);
  const Rank rv = field.rank(v);
  const std::size_t n = link.vertices.size();
  if (!link.closed) {
    out.kind = VertexKind::BoundaryRegular;
    return out;
  }
  auto up = [&](std::size_t i) { return field.rank(link.vertices[i % n]) > rv; };

  std::size_t n_up = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (up(i)) ++n_up;
    if (up(i) != up(i + 1)) ++out.mixed_count;
  }
  if (out.mixed_count % 2 != 0)
    throw InternalError("odd mixed link count at vertex " + std::to_string(v));

  // Runs of upper vertices; rotate the start to a sign change so runs do not wrap.
  if (n_up == n) {
    out.upper_components.emplace_back(link.vertices.begin(), link.vertices.end());
  } else if (n_up > 0) {
    std::size_t start = 0;
    while (!(up(start) && !up(start + n - 1))) ++start;
    std::vector<VertexId> run;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t i = (start + k) % n;
      if (up(i)) {
        run.push_back(link.vertices[i]);
      } else if (!run.empty()) {
        out.upper_components.push_back(std::move(run));
        run.clear();
      }
    }
    if (!run.empty()) out.upper_components.push_back(std::move(run));
  }
  out.lower_component_count =
      n_up == n ? 0 : (n_up == 0 ? 1 : static_cast<int>(out.upper_components.size()));

  if (n_up == 0) {
    out.kind = VertexKind::Maximum;
  } else if (n_up == n) {
    out.kind = VertexKind::Minimum;
  } else if (out.mixed_count == 2) {
    out.kind = VertexKind::Regular;
  } else {
    out.kind = VertexKind::Saddle;
    out.multiplicity = (out.mixed_count - 2) / 2;
  }
  return out;
}

std::optional<std::size_t> CriticalInventory::index_of(VertexId v) const {
  if (v >= vertex_slot.size() || vertex_slot[v] == kInvalid) return std::nullopt;
  return vertex_slot[v];
}

CriticalInventory build_inventory(const Mesh& mesh, const ScalarField& field, unsigned workers) {
  const std::size_t nv = mesh.num_vertices();
  if (field.size() != nv) throw InputError("scalar field size does not match mesh");
  std::vector<CriticalPoint> per_vertex(nv);
  parallel_for(nv, workers, [&](std::size_t i) {
    auto v = static_cast<VertexId>(i);
    auto c = classify_vertex(mesh, field, v);
    per_vertex[i] = {v, field.rank(v), c.kind, c.multiplicity};
  });

  CriticalInventory inv;
  inv.vertex_slot.assign(nv, kInvalid);
  for (Rank r = 0; r < nv; ++r) {
    const auto& c = per_vertex[field.vertex_at(r)];
    switch (c.kind) {
      case VertexKind::Minimum: ++inv.minima; break;
      case VertexKind::Maximum: ++inv.maxima; break;
      case VertexKind::Saddle:
        ++inv.saddles;
        inv.total_multiplicity += static_cast<std::size_t>(c.multiplicity);
        break;
      default: continue;
    }
    inv.vertex_slot[c.vertex] = static_cast<std::uint32_t>(inv.sorted.size());
    inv.sorted.push_back(c);
  }
  return inv;
}

BoundaryReport validate_morse_boundary(const Mesh& mesh, const ScalarField& field) {
  BoundaryReport report;
  const auto& loops = mesh.boundary_loops();
  report.sides.assign(loops.size(), LoopSide::Lower);
  if (loops.empty()) return report;

  const std::size_t nc = mesh.num_components();
  constexpr Rank kNone = std::numeric_limits<Rank>::max();
  std::vector<Rank> lo(nc, kNone), hi(nc, 0);
  std::vector<bool> has_interior(nc, false);
  for (VertexId v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.is_boundary_vertex(v)) continue;
    auto c = mesh.component_of_vertex(v);
    has_interior[c] = true;
    lo[c] = std::min(lo[c], field.rank(v));
    hi[c] = std::max(hi[c], field.rank(v));
  }

  for (std::uint32_t l = 0; l < loops.size(); ++l) {
    const auto& loop = loops[l];
    auto c = mesh.component_of_vertex(loop.front());
    Rank lmin = kNone, lmax = 0;
    for (VertexId v : loop) {
      lmin = std::min(lmin, field.rank(v));
      lmax = std::max(lmax, field.rank(v));
    }
    if (!has_interior[c]) {
      report.violations.push_back({l, kInvalid, "component has no interior vertices"});
      continue;
    }
    if (lmax < lo[c]) {
      report.sides[l] = LoopSide::Lower;
    } else if (lmin > hi[c]) {
      report.sides[l] = LoopSide::Upper;
    } else {
      report.violations.push_back(
          {l, kInvalid, "loop is neither below nor above all interior vertices of its component"});
      continue;
    }
    // Cap the loop with a virtual apex on its side; every loop vertex must
    // then have exactly two sign changes around its closed link.
    const bool apex_up = report.sides[l] == LoopSide::Upper;
    for (VertexId v : loop) {
      const auto link = mesh.link(v);
      const Rank rv = field.rank(v);
      std::vector<bool> signs;
      signs.reserve(link.vertices.size() + 1);
      for (VertexId u : link.vertices) signs.push_back(field.rank(u) > rv);
      signs.push_back(apex_up);
      int changes = 0;
      for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
      if (changes != 2)
        report.violations.push_back({l, v, "boundary vertex is critical once the loop is capped"});
    }
  }
  return report;
}

BoundaryReport require_clean_boundary(const Mesh& mesh, const ScalarField& field) {
  auto report = validate_morse_boundary(mesh, field);
  if (report.clean()) return report;
  std::string msg = "boundary is not admissible for the Reeb graph computation:";
  for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) {
    const auto& v = report.violations[i];
    msg += "\n  loop " + std::to_string(v.loop);
    if (v.vertex != kInvalid) msg += " vertex " + std::to_string(v.vertex);
    msg += ": " + v.reason;
  }
  if (report.violations.size() > 5)
    msg += "\n  ... " + std::to_string(report.violations.size() - 5) + " more";
  throw ValidationError(msg);
}

}  // namespace reeb
