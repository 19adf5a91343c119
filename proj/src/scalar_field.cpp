// SPDX-License-Identifier: Apache-2.0
#include "reeb/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "reeb/error.hpp"

namespace reeb {

ScalarField::ScalarField(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw InputError("non-finite scalar value at vertex " + std::to_string(i));
  order_.resize(values_.size());
  std::iota(order_.begin(), order_.end(), VertexId{0});
  std::sort(order_.begin(), order_.end(), [this](VertexId a, VertexId b) {
    return values_[a] < values_[b] || (values_[a] == values_[b] && a < b);
  });
  rank_.resize(values_.size());
  for (Rank r = 0; r < order_.size(); ++r) rank_[order_[r]] = r;
}

RankLevel ScalarField::level_below(double t) const {
  auto it = std::partition_point(order_.begin(), order_.end(),
                                 [&](VertexId v) { return values_[v] < t; });
  return RankLevel{static_cast<Rank>(it - order_.begin())};
}

}  // namespace reeb
