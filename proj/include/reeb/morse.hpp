// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reeb/mesh.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

enum class VertexKind { Regular, Minimum, Maximum, Saddle, BoundaryRegular };

const char* to_string(VertexKind kind);

/// PL classification of a vertex from its upper, lower and mixed links.
struct VertexClass {
  VertexKind kind = VertexKind::Regular;
  int multiplicity = 0;  ///< saddles only; |Lk±| = 2 + 2m
  int mixed_count = 0;   ///< |Lk±|: link edges whose endpoints straddle v
  /// Maximal runs of link vertices above v, in link order.
  std::vector<std::vector<VertexId>> upper_components;
  int lower_component_count = 0;
};

/// Interior vertices are classified by their link cycle. Boundary vertices
/// report BoundaryRegular; their admissibility is checked by
/// validate_morse_boundary().
VertexClass classify_vertex(const Mesh& mesh, const ScalarField& field, VertexId v);

struct CriticalPoint {
  VertexId vertex = kInvalid;
  Rank rank = 0;
  VertexKind kind = VertexKind::Regular;
  int multiplicity = 0;
};

struct CriticalInventory {
  std::vector<CriticalPoint> sorted;  ///< strictly ascending by rank
  std::size_t minima = 0;
  std::size_t maxima = 0;
  std::size_t saddles = 0;
  std::size_t total_multiplicity = 0;

  /// Index into `sorted`, or nullopt for non-critical vertices.
  std::optional<std::size_t> index_of(VertexId v) const;
  bool is_critical(VertexId v) const { return index_of(v).has_value(); }
  /// minima + maxima - total saddle multiplicity
  long euler_sum() const {
    return static_cast<long>(minima + maxima) - static_cast<long>(total_multiplicity);
  }

  std::vector<std::uint32_t> vertex_slot;  ///< per vertex: index into sorted or kInvalid
};

/// Classifies every vertex (fanned out over `workers` threads) and collects
/// the critical ones in rank order.
CriticalInventory build_inventory(const Mesh& mesh, const ScalarField& field,
                                  unsigned workers = 1);

enum class LoopSide { Lower, Upper };

struct BoundaryViolation {
  std::uint32_t loop = kInvalid;
  VertexId vertex = kInvalid;  ///< kInvalid when the whole loop is at fault
  std::string reason;
};

struct BoundaryReport {
  /// Side of each boundary loop; meaningful only for loops without violations.
  std::vector<LoopSide> sides;
  std::vector<BoundaryViolation> violations;

  bool clean() const { return violations.empty(); }
};

/// Every boundary loop must lie entirely below, or entirely above, all
/// interior vertices of its connected component, and each boundary vertex
/// must be regular once its loop is capped off by a virtual apex on the
/// loop's side. Problems are reported, not thrown.
BoundaryReport validate_morse_boundary(const Mesh& mesh, const ScalarField& field);

/// Throws ValidationError listing the first few violations, if any.
BoundaryReport require_clean_boundary(const Mesh& mesh, const ScalarField& field);

}  // namespace reeb
