// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace reeb {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;
using Rank = std::uint32_t;

inline constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

using Triangle = std::array<VertexId, 3>;

/// A level strictly between two rank-consecutive vertices: vertices with
/// rank >= threshold lie above it, the rest below. Written as the
/// half-integer rank `threshold - 1/2`.
struct RankLevel {
  Rank threshold = 0;

  bool above(Rank r) const { return r >= threshold; }
  /// True when an edge with endpoint ranks (a, b) crosses this level.
  bool straddles(Rank a, Rank b) const { return above(a) != above(b); }
  double as_half_integer() const { return static_cast<double>(threshold) - 0.5; }

  friend auto operator<=>(const RankLevel&, const RankLevel&) = default;
};

}  // namespace reeb
