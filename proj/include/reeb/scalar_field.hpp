// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "reeb/types.hpp"

namespace reeb {

/// Per-vertex values plus the strict total order used everywhere else:
/// u precedes v iff (value(u), u) < (value(v), v). All topological
/// decisions compare ranks, never raw values.
class ScalarField {
 public:
  /// Throws InputError on non-finite values.
  explicit ScalarField(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double value(VertexId v) const { return values_[v]; }
  Rank rank(VertexId v) const { return rank_[v]; }
  /// Vertex holding rank r.
  VertexId vertex_at(Rank r) const { return order_[r]; }
  bool less(VertexId a, VertexId b) const { return rank_[a] < rank_[b]; }

  const std::vector<double>& values() const { return values_; }
  std::span<const Rank> ranks() const { return rank_; }
  std::span<const VertexId> order() const { return order_; }

  double min_value() const { return values_.empty() ? 0.0 : values_[order_.front()]; }
  double max_value() const { return values_.empty() ? 0.0 : values_[order_.back()]; }

  /// Level for a real value t: everything with value >= t counts as above.
  RankLevel level_below(double t) const;

 private:
  std::vector<double> values_;
  std::vector<Rank> rank_;
  std::vector<VertexId> order_;
};

}  // namespace reeb
