// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "reeb/mesh.hpp"
#include "reeb/scalar_field.hpp"

namespace reeb {

enum class MeshFormat { Off, Obj };
enum class Axis { X, Y, Z };

/// Picks the format from the extension (.off / .obj, case-insensitive).
MeshFormat format_from_path(const std::filesystem::path& path);

Mesh read_off(std::istream& in);
Mesh read_obj(std::istream& in);
Mesh load_mesh(const std::filesystem::path& path, MeshFormat format);
Mesh load_mesh(const std::filesystem::path& path);

void write_off(std::ostream& out, const Mesh& mesh);
void write_obj(std::ostream& out, const Mesh& mesh);
void save_mesh(const std::filesystem::path& path, const Mesh& mesh);

/// |V| whitespace-separated numbers.
ScalarField read_scalar_field(std::istream& in, const Mesh& mesh);
ScalarField load_scalar_field(const Mesh& mesh, const std::filesystem::path& path);
ScalarField field_from_axis(const Mesh& mesh, Axis axis);
void write_scalar_field(std::ostream& out, const ScalarField& field);
void save_scalar_field(const std::filesystem::path& path, const ScalarField& field);

/// Polylines as OBJ `v` + `l` records; closed polylines repeat their first index.
void write_obj_polylines(std::ostream& out, const std::vector<std::vector<Vec3>>& lines,
                         const std::vector<bool>& closed);

}  // namespace reeb
