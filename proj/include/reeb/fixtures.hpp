// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reeb/mesh.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

/// A generated test surface with its scalar field.
struct Fixture {
  std::string name;
  Mesh mesh;
  ScalarField field;
  int genus = -1;  ///< known genus of closed fixtures, -1 otherwise
};

/// Linear height h = z + a*x + b*y. The default tilt breaks the symmetric
/// ties of parametric meshes.
struct Tilt {
  double a = 0.0;
  double b = 0.0;
};
Tilt default_tilt(std::uint64_t seed = 0);
std::vector<double> height_values(const Mesh& mesh, Tilt tilt);

/// Latitude/longitude sphere with `res` latitude bands and 2*res meridians.
Fixture make_sphere(int res, Tilt tilt = default_tilt());
/// res x res quad torus standing upright (hole axis along y).
Fixture make_torus(int res, Tilt tilt = default_tilt());
/// Closed genus-g surface: g tori stacked along z and blended, meshed by
/// marching tetrahedra on a grid with `res` cells across one torus.
Fixture make_genus(int genus, int res, Tilt tilt = default_tilt());
/// Open tube, height field without tilt; two boundary loops.
Fixture make_cylinder(int res);
/// Paraboloid bowl z = r^2 over the unit disk; one boundary loop on top.
Fixture make_disk(int res);
/// Sphere band with three boundary loops (one lower, two upper) and one
/// interior saddle.
Fixture make_pants(int res);
/// Sphere with f = Re((x+iy)^3): three maxima, three minima and a monkey
/// saddle at each pole.
Fixture make_monkey(int res);
/// A sphere and a torus side by side in one mesh.
Fixture make_two_component(int res);
/// Tube whose top loop sits at mid height, so it fails boundary validation.
Fixture make_misplaced_loop(int res);

/// Names accepted by gen_fixture.
const std::vector<std::string>& fixture_kinds();
/// Dispatch by name; throws InputError for unknown kinds or resolutions too
/// small for the topology.
Fixture gen_fixture(const std::string& kind, int res, std::uint64_t seed = 0);

/// Keeps the part of the surface with a <= value <= b, clipping faces along
/// both levels. New vertices are placed by linear interpolation and carry
/// value a or b exactly. Neither level may equal a vertex value.
struct Clipped {
  Mesh mesh;
  std::vector<double> values;
};
Clipped clip_band(const Mesh& mesh, const std::vector<double>& values, double a, double b);

}  // namespace reeb
