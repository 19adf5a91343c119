// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "reeb/mesh.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb::test {

inline Mesh tetrahedron() {
  return Mesh::build({{0, 0, 0}, {1, 0, 0.1}, {0, 1, 0.2}, {0, 0, 1}},
                     {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}});
}

/// Center vertex 0 surrounded by a closed ring of n vertices 1..n, plus an
/// apex n+1 closing the ring from the other side (a bipyramid).
inline Mesh bipyramid(int n) {
  std::vector<Vec3> pos{{0, 0, 0}};
  for (int i = 0; i < n; ++i) {
    const double a = 2 * M_PI * i / n;
    pos.push_back({std::cos(a), std::sin(a), 0});
  }
  pos.push_back({0, 0, -1});
  std::vector<Triangle> faces;
  const auto apex = static_cast<VertexId>(n + 1);
  for (int i = 0; i < n; ++i) {
    const auto a = static_cast<VertexId>(1 + i), b = static_cast<VertexId>(1 + (i + 1) % n);
    faces.push_back({0, a, b});
    faces.push_back({apex, b, a});
  }
  return Mesh::build(std::move(pos), std::move(faces));
}

/// Open fan of n triangles around vertex 0.
inline Mesh fan(int n) {
  std::vector<Vec3> pos{{0, 0, 0}};
  for (int i = 0; i <= n; ++i) pos.push_back({std::cos(0.5 * i), std::sin(0.5 * i), 0});
  std::vector<Triangle> faces;
  for (int i = 0; i < n; ++i)
    faces.push_back({0, static_cast<VertexId>(1 + i), static_cast<VertexId>(2 + i)});
  return Mesh::build(std::move(pos), std::move(faces));
}

}  // namespace reeb::test
