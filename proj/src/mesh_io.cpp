// SPDX-License-Identifier: Apache-2.0
#include "reeb/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "reeb/error.hpp"

namespace reeb {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Next line that is neither blank nor a '#' comment.
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path) {
  auto ext = lower(path.extension().string());
  if (ext == ".off") return MeshFormat::Off;
  if (ext == ".obj") return MeshFormat::Obj;
  throw InputError("unknown mesh extension '" + ext + "' (expected .off or .obj)");
}

Mesh read_off(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw InputError("OFF: empty input");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") throw InputError("OFF: missing 'OFF' header");
  std::size_t nv = 0, nf = 0, ne = 0;
  if (!(header >> nv)) {
    if (!next_content_line(in, line)) throw InputError("OFF: missing counts line");
    header = std::istringstream(line);
    header >> nv;
  }
  if (!(header >> nf >> ne)) throw InputError("OFF: malformed counts line");

  std::vector<Vec3> positions(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!next_content_line(in, line)) throw InputError("OFF: truncated vertex list");
    std::istringstream ls(line);
    if (!(ls >> positions[i].x >> positions[i].y >> positions[i].z))
      throw InputError("OFF: malformed vertex line " + std::to_string(i));
  }
  std::vector<Triangle> faces(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (!next_content_line(in, line)) throw InputError("OFF: truncated face list");
    std::istringstream ls(line);
    std::size_t arity = 0;
    if (!(ls >> arity)) throw InputError("OFF: malformed face line " + std::to_string(i));
    if (arity != 3)
      throw InputError("OFF: face " + std::to_string(i) + " has " + std::to_string(arity) +
                       " vertices; only triangles are supported");
    long long a, b, c;
    if (!(ls >> a >> b >> c)) throw InputError("OFF: malformed face line " + std::to_string(i));
    if (a < 0 || b < 0 || c < 0) throw InputError("OFF: negative vertex index");
    faces[i] = {static_cast<VertexId>(a), static_cast<VertexId>(b), static_cast<VertexId>(c)};
  }
  return Mesh::build(std::move(positions), std::move(faces));
}

Mesh read_obj(std::istream& in) {
  std::vector<Vec3> positions;
  std::vector<Triangle> faces;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y >> p.z))
        throw InputError("OBJ: malformed vertex at line " + std::to_string(lineno));
      positions.push_back(p);
    } else if (tag == "f") {
      std::vector<long long> idx;
      std::string tok;
      while (ls >> tok) {
        // accept "i", "i/t", "i/t/n", "i//n"
        auto slash = tok.find('/');
        try {
          idx.push_back(std::stoll(tok.substr(0, slash)));
        } catch (const std::exception&) {
          throw InputError("OBJ: malformed face at line " + std::to_string(lineno));
        }
      }
      if (idx.size() != 3)
        throw InputError("OBJ: face at line " + std::to_string(lineno) + " has " +
                         std::to_string(idx.size()) + " vertices; only triangles are supported");
      Triangle t{};
      for (int k = 0; k < 3; ++k) {
        long long i = idx[k];
        if (i < 0) i = static_cast<long long>(positions.size()) + i + 1;  // relative index
        if (i < 1) throw InputError("OBJ: bad vertex index at line " + std::to_string(lineno));
        t[k] = static_cast<VertexId>(i - 1);
      }
      faces.push_back(t);
    }
  }
  return Mesh::build(std::move(positions), std::move(faces));
}

Mesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  auto in = open_in(path);
  return format == MeshFormat::Off ? read_off(in) : read_obj(in);
}

Mesh load_mesh(const std::filesystem::path& path) {
  return load_mesh(path, format_from_path(path));
}

namespace {

// Full round-trip precision for doubles, restored on exit.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(std::ostream& out)
      : out_(out), old_(out.precision(std::numeric_limits<double>::max_digits10)) {}
  ~PrecisionGuard() { out_.precision(old_); }

 private:
  std::ostream& out_;
  std::streamsize old_;
};

}  // namespace

void write_off(std::ostream& out, const Mesh& mesh) {
  const PrecisionGuard guard(out);
  out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << " 0\n";
  for (const auto& p : mesh.positions()) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& t : mesh.faces()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_obj(std::ostream& out, const Mesh& mesh) {
  const PrecisionGuard guard(out);
  for (const auto& p : mesh.positions()) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& t : mesh.faces())
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void save_mesh(const std::filesystem::path& path, const Mesh& mesh) {
  auto out = open_out(path);
  if (format_from_path(path) == MeshFormat::Off)
    write_off(out, mesh);
  else
    write_obj(out, mesh);
}

ScalarField read_scalar_field(std::istream& in, const Mesh& mesh) {
  std::vector<double> values;
  values.reserve(mesh.num_vertices());
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      values.push_back(v);
    } catch (const std::out_of_range&) {
      throw InputError("scalar value out of range: " + tok);
    } catch (const std::invalid_argument&) {
      throw InputError("malformed scalar value: " + tok);
    }
  }
  if (values.size() != mesh.num_vertices())
    throw InputError("scalar field has " + std::to_string(values.size()) +
                     " values but the mesh has " + std::to_string(mesh.num_vertices()) +
                     " vertices");
  return ScalarField(std::move(values));
}

ScalarField load_scalar_field(const Mesh& mesh, const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_scalar_field(in, mesh);
}

ScalarField field_from_axis(const Mesh& mesh, Axis axis) {
  std::vector<double> values;
  values.reserve(mesh.num_vertices());
  for (const auto& p : mesh.positions())
    values.push_back(axis == Axis::X ? p.x : axis == Axis::Y ? p.y : p.z);
  return ScalarField(std::move(values));
}

void write_scalar_field(std::ostream& out, const ScalarField& field) {
  const PrecisionGuard guard(out);
  for (double v : field.values()) out << v << '\n';
}

void save_scalar_field(const std::filesystem::path& path, const ScalarField& field) {
  auto out = open_out(path);
  write_scalar_field(out, field);
}

void write_obj_polylines(std::ostream& out, const std::vector<std::vector<Vec3>>& lines,
                         const std::vector<bool>& closed) {
  const PrecisionGuard guard(out);
  std::size_t base = 1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const auto& p : lines[i]) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
    if (lines[i].size() >= 2) {
      out << 'l';
      for (std::size_t k = 0; k < lines[i].size(); ++k) out << ' ' << base + k;
      if (i < closed.size() && closed[i]) out << ' ' << base;
      out << '\n';
    }
    base += lines[i].size();
  }
}

}  // namespace reeb
