// SPDX-License-Identifier: Apache-2.0
#include "reeb/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "reeb/error.hpp"

namespace reeb {
namespace {

constexpr double kPi = std::numbers::pi;

void require_res(int res, int min, const char* kind) {
  if (res < min)
    throw InputError(std::string(kind) + " needs resolution >= " + std::to_string(min) +
                     " (got " + std::to_string(res) + ")");
}

Fixture finish(std::string name, std::vector<Vec3> pos, std::vector<Triangle> faces,
               std::vector<double> values, int genus) {
  auto mesh = Mesh::build(std::move(pos), std::move(faces));
  return {std::move(name), std::move(mesh), ScalarField(std::move(values)), genus};
}

Fixture finish_height(std::string name, std::vector<Vec3> pos, std::vector<Triangle> faces,
                      Tilt tilt, int genus) {
  auto mesh = Mesh::build(std::move(pos), std::move(faces));
  auto values = height_values(mesh, tilt);
  return {std::move(name), std::move(mesh), ScalarField(std::move(values)), genus};
}

// Quad grid (rows x cols) periodic in columns; rows periodic when wrap_rows.
void grid_faces(std::vector<Triangle>& faces, VertexId base, int rows, int cols, bool wrap_rows) {
  auto id = [&](int i, int j) {
    return base + static_cast<VertexId>(((i % rows + rows) % rows) * cols + (j % cols + cols) % cols);
  };
  const int last = wrap_rows ? rows : rows - 1;
  for (int i = 0; i < last; ++i)
    for (int j = 0; j < cols; ++j) {
      faces.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
    }
}

struct UvSphere {
  std::vector<Vec3> pos;
  std::vector<Triangle> faces;
};

// Poles are vertices 0 (south) and 1 (north); rings between them.
UvSphere uv_sphere(int bands, int segments, double phase) {
  UvSphere s;
  s.pos.push_back({0, 0, -1});
  s.pos.push_back({0, 0, 1});
  for (int i = 1; i < bands; ++i) {
    const double lat = -kPi / 2 + kPi * i / bands;
    for (int j = 0; j < segments; ++j) {
      const double lon = 2 * kPi * j / segments + phase;
      s.pos.push_back({std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)});
    }
  }
  const int rings = bands - 1;
  grid_faces(s.faces, 2, rings, segments, false);
  auto ring = [&](int i, int j) { return static_cast<VertexId>(2 + i * segments + (j % segments)); };
  for (int j = 0; j < segments; ++j) {
    s.faces.push_back({0, ring(0, j + 1), ring(0, j)});
    s.faces.push_back({1, ring(rings - 1, j), ring(rings - 1, j + 1)});
  }
  return s;
}

}  // namespace

Tilt default_tilt(std::uint64_t seed) {
  if (seed == 0) return {0.0531, 0.0297};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.02, 0.08);
  return {d(rng), d(rng)};
}

std::vector<double> height_values(const Mesh& mesh, Tilt tilt) {
  std::vector<double> out(mesh.num_vertices());
  for (VertexId v = 0; v < mesh.num_vertices(); ++v) {
    const auto p = mesh.position(v);
    out[v] = p.z + tilt.a * p.x + tilt.b * p.y;
  }
  return out;
}

Fixture make_sphere(int res, Tilt tilt) {
  require_res(res, 3, "sphere");
  auto s = uv_sphere(res, 2 * res, 0.0);
  return finish_height("sphere", std::move(s.pos), std::move(s.faces), tilt, 0);
}

namespace {

void torus_into(std::vector<Vec3>& pos, std::vector<Triangle>& faces, int res, Vec3 offset) {
  const double big = 2.0, small = 0.75;
  const auto base = static_cast<VertexId>(pos.size());
  for (int i = 0; i < res; ++i) {
    const double u = 2 * kPi * i / res;
    for (int j = 0; j < res; ++j) {
      const double v = 2 * kPi * j / res;
      const double w = big + small * std::cos(v);
      pos.push_back(offset + Vec3{w * std::cos(u), small * std::sin(v), w * std::sin(u)});
    }
  }
  grid_faces(faces, base, res, res, true);
}

}  // namespace

Fixture make_torus(int res, Tilt tilt) {
  require_res(res, 4, "torus");
  std::vector<Vec3> pos;
  std::vector<Triangle> faces;
  torus_into(pos, faces, res, {});
  return finish_height("torus", std::move(pos), std::move(faces), tilt, 1);
}

namespace {

// Marching tetrahedra over a regular grid; each cube is split into six
// tetrahedra around its main diagonal so neighboring cubes agree.
template <class Sdf>
std::pair<std::vector<Vec3>, std::vector<Triangle>> march_tets(const Sdf& sdf, Vec3 lo, double h,
                                                               std::array<int, 3> n) {
  const int nx = n[0] + 1, ny = n[1] + 1, nz = n[2] + 1;
  auto gid = [&](int i, int j, int k) {
    return static_cast<std::uint64_t>((static_cast<std::int64_t>(k) * ny + j) * nx + i);
  };
  auto gpos = [&](std::uint64_t g) {
    const auto i = static_cast<int>(g % nx), j = static_cast<int>((g / nx) % ny),
               k = static_cast<int>(g / (static_cast<std::uint64_t>(nx) * ny));
    return Vec3{lo.x + h * i, lo.y + h * j, lo.z + h * k};
  };
  std::vector<double> val(static_cast<std::size_t>(nx) * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        double s = sdf(gpos(gid(i, j, k)));
        if (s == 0.0) s = 1e-12;  // keep the iso level off grid values
        val[gid(i, j, k)] = s;
      }

  std::vector<Vec3> pos;
  std::vector<Triangle> faces;
  std::unordered_map<std::uint64_t, VertexId> on_edge;
  auto cross = [&](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t key = std::min(a, b) * (val.size() + 1) + std::max(a, b);
    auto [it, fresh] = on_edge.try_emplace(key, static_cast<VertexId>(pos.size()));
    if (fresh) {
      const double t = val[a] / (val[a] - val[b]);
      pos.push_back(gpos(a) + t * (gpos(b) - gpos(a)));
    }
    return it->second;
  };
  // Orientation is decided on grid-edge midpoints, which never degenerate.
  auto emit = [&](std::array<std::pair<std::uint64_t, std::uint64_t>, 3> tri, std::uint64_t out) {
    Vec3 m[3];
    for (int q = 0; q < 3; ++q) m[q] = 0.5 * (gpos(tri[q].first) + gpos(tri[q].second));
    const Vec3 e1 = m[1] - m[0], e2 = m[2] - m[0];
    const Vec3 nrm{e1.y * e2.z - e1.z * e2.y, e1.z * e2.x - e1.x * e2.z, e1.x * e2.y - e1.y * e2.x};
    const Vec3 d = gpos(out) - m[0];
    Triangle t{cross(tri[0].first, tri[0].second), cross(tri[1].first, tri[1].second),
               cross(tri[2].first, tri[2].second)};
    if (nrm.x * d.x + nrm.y * d.y + nrm.z * d.z < 0) std::swap(t[1], t[2]);
    faces.push_back(t);
  };
  static constexpr int kTets[6][4] = {{0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7},
                                      {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7}};
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        std::uint64_t c[8];
        for (int b = 0; b < 8; ++b) c[b] = gid(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1));
        for (const auto& tet : kTets) {
          std::vector<std::uint64_t> in, outv;
          for (int q : tet) (val[c[q]] < 0 ? in : outv).push_back(c[q]);
          if (in.empty() || outv.empty()) continue;
          if (in.size() == 1) {
            emit({{{in[0], outv[0]}, {in[0], outv[1]}, {in[0], outv[2]}}}, outv[0]);
          } else if (in.size() == 3) {
            emit({{{in[0], outv[0]}, {in[1], outv[0]}, {in[2], outv[0]}}}, outv[0]);
          } else {
            // quad ac, ad, bd, bc
            const auto a = in[0], b = in[1], cc = outv[0], d = outv[1];
            emit({{{a, cc}, {a, d}, {b, d}}}, cc);
            emit({{{a, cc}, {b, d}, {b, cc}}}, cc);
          }
        }
      }
  return {std::move(pos), std::move(faces)};
}

}  // namespace

Fixture make_genus(int genus, int res, Tilt tilt) {
  if (genus < 1) throw InputError("genus must be >= 1");
  require_res(res, 8, "genus surface");
  const double big = 1.0, small = 0.42, blend = 0.2;
  auto sdf = [&](Vec3 p) {
    double d = 1e9;
    for (int t = 0; t < genus; ++t) {
      const double zc = p.z - 2 * big * t;
      const double q = std::hypot(std::hypot(p.x, zc) - big, p.y) - small;
      // polynomial smooth minimum
      const double hh = std::clamp(0.5 + 0.5 * (q - d) / blend, 0.0, 1.0);
      d = q * (1 - hh) + d * hh - blend * hh * (1 - hh);
    }
    return d;
  };
  const double h = 2 * (big + small) / res;
  const double pad = 2 * h;
  const Vec3 lo{-(big + small) - pad, -small - pad, -(big + small) - pad};
  const Vec3 hi{big + small + pad, small + pad, 2 * big * (genus - 1) + big + small + pad};
  // offset the grid by an irrational fraction so no grid point is symmetric
  const Vec3 shift{0.1234567 * h, 0.3141593 * h, 0.2718282 * h};
  std::array<int, 3> n{static_cast<int>(std::ceil((hi.x - lo.x) / h)),
                       static_cast<int>(std::ceil((hi.y - lo.y) / h)),
                       static_cast<int>(std::ceil((hi.z - lo.z) / h))};
  auto [pos, faces] = march_tets(sdf, lo - shift, h, n);
  return finish_height("genus" + std::to_string(genus), std::move(pos), std::move(faces), tilt,
                       genus);
}

Fixture make_cylinder(int res) {
  require_res(res, 3, "cylinder");
  const int rows = res + 1, cols = 2 * res;
  std::vector<Vec3> pos;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double a = 2 * kPi * j / cols;
      pos.push_back({std::cos(a), std::sin(a), 2.0 * i / res});
    }
  std::vector<Triangle> faces;
  grid_faces(faces, 0, rows, cols, false);
  return finish_height("cylinder", std::move(pos), std::move(faces), {}, -1);
}

Fixture make_disk(int res) {
  require_res(res, 2, "disk");
  const int cols = 4 * res;
  std::vector<Vec3> pos{{0, 0, 0}};
  for (int i = 1; i <= res; ++i)
    for (int j = 0; j < cols; ++j) {
      const double r = static_cast<double>(i) / res, a = 2 * kPi * j / cols;
      pos.push_back({r * std::cos(a), r * std::sin(a), r * r});
    }
  std::vector<Triangle> faces;
  grid_faces(faces, 1, res, cols, false);
  for (int j = 0; j < cols; ++j)
    faces.push_back({0, static_cast<VertexId>(1 + (j + 1) % cols), static_cast<VertexId>(1 + j)});
  return finish_height("disk", std::move(pos), std::move(faces), {}, -1);
}

Clipped clip_band(const Mesh& mesh, const std::vector<double>& values, double a, double b) {
  if (!(a < b)) throw InputError("clip_band needs a < b");
  for (double v : values)
    if (v == a || v == b) throw InputError("clip level coincides with a vertex value");
  std::vector<Vec3> pos;
  std::vector<double> out_values;
  std::vector<VertexId> kept(mesh.num_vertices(), kInvalid);
  std::unordered_map<std::uint64_t, VertexId> crossings;  // (edge, level) -> new vertex
  auto keep_vertex = [&](VertexId v) {
    if (kept[v] == kInvalid) {
      kept[v] = static_cast<VertexId>(pos.size());
      pos.push_back(mesh.position(v));
      out_values.push_back(values[v]);
    }
    return kept[v];
  };
  auto crossing = [&](VertexId p, VertexId q, int which, double level) {
    const auto e = *mesh.find_edge(p, q);
    auto [it, fresh] = crossings.try_emplace(2ull * e + which, static_cast<VertexId>(pos.size()));
    if (fresh) {
      const double t = (level - values[p]) / (values[q] - values[p]);
      pos.push_back(mesh.position(p) + t * (mesh.position(q) - mesh.position(p)));
      out_values.push_back(level);
    }
    return it->second;
  };
  std::vector<Triangle> faces;
  for (FaceId f = 0; f < mesh.num_faces(); ++f) {
    const auto& t = mesh.face(f);
    std::vector<VertexId> poly;
    for (int i = 0; i < 3; ++i) {
      const VertexId p = t[i], q = t[(i + 1) % 3];
      const double vp = values[p], vq = values[q];
      if (a <= vp && vp <= b) poly.push_back(keep_vertex(p));
      std::array<std::pair<double, int>, 2> hits;
      int nh = 0;
      for (int w = 0; w < 2; ++w) {
        const double level = w == 0 ? a : b;
        if ((vp - level) * (vq - level) < 0) hits[nh++] = {(level - vp) / (vq - vp), w};
      }
      if (nh == 2 && hits[1].first < hits[0].first) std::swap(hits[0], hits[1]);
      for (int k = 0; k < nh; ++k)
        poly.push_back(crossing(p, q, hits[k].second, hits[k].second == 0 ? a : b));
    }
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) faces.push_back({poly[0], poly[k], poly[k + 1]});
  }
  return {Mesh::build(std::move(pos), std::move(faces)), std::move(out_values)};
}

Fixture make_pants(int res) {
  require_res(res, 6, "pants");
  // f = x^2 + 0.3 z on the sphere: min, one saddle, two maxima. The band
  // between the min and the saddle level, and between the saddle and the
  // maxima, keeps one lower and two upper loops.
  auto s = uv_sphere(res, 2 * res, 0.0137);
  auto sphere = Mesh::build(std::move(s.pos), std::move(s.faces));
  std::vector<double> f(sphere.num_vertices());
  for (VertexId v = 0; v < sphere.num_vertices(); ++v) {
    const auto p = sphere.position(v);
    f[v] = p.x * p.x + 0.3 * p.z + 0.011 * p.y;
  }
  auto band = clip_band(sphere, f, -0.1003, 0.6007);
  return {"pants", std::move(band.mesh), ScalarField(std::move(band.values)), -1};
}

Fixture make_monkey(int res) {
  require_res(res, 3, "monkey");
  const int segments = 6 * ((2 * res + 5) / 6);
  auto s = uv_sphere(res * 2, segments, 0.2 * 2 * kPi / segments);
  std::vector<double> f(s.pos.size());
  for (std::size_t v = 0; v < s.pos.size(); ++v) {
    const auto& p = s.pos[v];
    f[v] = p.x * p.x * p.x - 3 * p.x * p.y * p.y;  // Re((x + iy)^3)
  }
  f[0] = f[1] = 0.0;
  return finish("monkey", std::move(s.pos), std::move(s.faces), std::move(f), 0);
}

Fixture make_two_component(int res) {
  require_res(res, 4, "two-component");
  auto s = uv_sphere(res, 2 * res, 0.0);
  std::vector<Vec3> pos = std::move(s.pos);
  std::vector<Triangle> faces = std::move(s.faces);
  torus_into(pos, faces, res, {5.0, 0.0, 0.37});
  return finish_height("two_component", std::move(pos), std::move(faces), default_tilt(), -1);
}

Fixture make_misplaced_loop(int res) {
  auto c = make_cylinder(res);
  const auto& loops = c.mesh.boundary_loops();
  std::vector<double> g = c.field.values();
  const auto& top = c.mesh.position(loops[0][0]).z > c.mesh.position(loops[1][0]).z ? loops[0]
                                                                                     : loops[1];
  for (VertexId v : top) g[v] = 0.5;
  return {"misplaced_loop", std::move(c.mesh), ScalarField(std::move(g)), -1};
}

const std::vector<std::string>& fixture_kinds() {
  static const std::vector<std::string> kinds{"sphere", "torus",  "genus2", "genus3",
                                              "cylinder", "disk", "pants",  "monkey",
                                              "two_component", "misplaced_loop"};
  return kinds;
}

Fixture gen_fixture(const std::string& kind, int res, std::uint64_t seed) {
  const Tilt tilt = default_tilt(seed);
  if (kind == "sphere") return make_sphere(res, tilt);
  if (kind == "torus") return make_torus(res, tilt);
  if (kind == "genus2") return make_genus(2, res, tilt);
  if (kind == "genus3") return make_genus(3, res, tilt);
  if (kind == "cylinder") return make_cylinder(res);
  if (kind == "disk") return make_disk(res);
  if (kind == "pants") return make_pants(res);
  if (kind == "monkey") return make_monkey(res);
  if (kind == "two_component") return make_two_component(res);
  if (kind == "misplaced_loop") return make_misplaced_loop(res);
  throw InputError("unknown fixture kind '" + kind + "'");
}

}  // namespace reeb
