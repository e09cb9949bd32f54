#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "meshtok/geometry.hpp"

namespace meshtok {

enum class MeshFormat { Obj, PlyAscii };

/// Picks a format from the file extension (.obj, .ply), case-insensitive.
std::optional<MeshFormat> format_from_path(const std::filesystem::path& path);

/// Parses an in-memory OBJ or ASCII PLY file.
///
/// Polygons with more than three vertices are fan-triangulated in file order,
/// so `f 1 2 3 4` becomes (1,2,3) and (1,3,4). Only `v` and `f` are read from
/// OBJ files; every other directive is skipped. Syntax problems raise
/// ParseError carrying the 1-based line number, and faces that reference a
/// missing vertex raise StructuralError.
Mesh load_mesh(std::string_view bytes, MeshFormat format);

Mesh load_mesh_file(const std::filesystem::path& path);

/// Writes `v` and `f` records with 17 significant digits, so positions round trip exactly.
void write_obj(std::ostream& out, const Mesh& mesh);
void write_obj_file(const std::filesystem::path& path, const Mesh& mesh);

}  // namespace meshtok
