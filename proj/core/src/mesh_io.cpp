#include "meshtok/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "meshtok/error.hpp"

namespace meshtok {
namespace {

using Location = ParseError::Location;

// Splits a buffer into lines, tracking 1-based line numbers. Handles \r\n.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) {
      return false;
    }
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      end = text_.size();
    }
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    pos_ = end + 1;
    ++number_;
    return true;
  }

  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) {
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

double parse_double(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (first != last && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(Location::Line, line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

long long parse_integer(std::string_view token, std::size_t line) {
  long long value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (first != last && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(Location::Line, line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

void triangulate_fan(const std::vector<std::uint32_t>& polygon, std::vector<Face>& faces) {
  for (std::size_t t = 1; t + 1 < polygon.size(); ++t) {
    faces.push_back({polygon[0], polygon[t], polygon[t + 1]});
  }
}

void check_indices(const Mesh& mesh) {
  const auto n = mesh.vertices.size();
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (const auto v : mesh.faces[f]) {
      if (v >= n) {
        throw StructuralError("face " + std::to_string(f) + " references vertex " +
                              std::to_string(v + 1) + " but the file has " + std::to_string(n) +
                              " vertices");
      }
    }
  }
}

Mesh parse_obj(std::string_view text) {
  Mesh mesh;
  LineReader reader(text);
  std::string_view line;
  std::vector<std::uint32_t> polygon;
  while (reader.next(line)) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto fields = split_ws(line);
    if (fields.empty()) {
      continue;
    }
    const std::size_t lineno = reader.number();
    if (fields[0] == "v") {
      if (fields.size() < 4) {
        throw ParseError(Location::Line, lineno, "vertex needs three coordinates");
      }
      mesh.vertices.push_back({parse_double(fields[1], lineno), parse_double(fields[2], lineno),
                               parse_double(fields[3], lineno)});
    } else if (fields[0] == "f") {
      if (fields.size() < 4) {
        throw ParseError(Location::Line, lineno, "face needs at least three vertices");
      }
      polygon.clear();
      for (std::size_t f = 1; f < fields.size(); ++f) {
        // v, v/vt, v//vn, v/vt/vn: only the position index matters.
        const auto ref = fields[f].substr(0, fields[f].find('/'));
        const long long raw = parse_integer(ref, lineno);
        long long index = 0;
        if (raw > 0) {
          index = raw - 1;
        } else if (raw < 0) {
          index = static_cast<long long>(mesh.vertices.size()) + raw;
          if (index < 0) {
            throw StructuralError("line " + std::to_string(lineno) + ": relative index " +
                                  std::to_string(raw) + " precedes the first vertex");
          }
        } else {
          throw ParseError(Location::Line, lineno, "vertex index 0 is not valid in OBJ");
        }
        if (index > static_cast<long long>(UINT32_MAX)) {
          throw StructuralError("line " + std::to_string(lineno) + ": vertex index too large");
        }
        polygon.push_back(static_cast<std::uint32_t>(index));
      }
      triangulate_fan(polygon, mesh.faces);
    }
  }
  check_indices(mesh);
  return mesh;
}

struct PlyProperty {
  std::string name;
  bool is_list = false;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

Mesh parse_ply(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line) || split_ws(line) != std::vector<std::string_view>{"ply"}) {
    throw ParseError(Location::Line, 1, "missing 'ply' magic line");
  }

  std::vector<PlyElement> elements;
  bool format_seen = false;
  bool header_done = false;
  while (reader.next(line)) {
    const auto fields = split_ws(line);
    const std::size_t lineno = reader.number();
    if (fields.empty()) {
      continue;
    }
    if (fields[0] == "format") {
      if (fields.size() < 2 || fields[1] != "ascii") {
        throw ParseError(Location::Line, lineno, "only ASCII PLY is supported");
      }
      format_seen = true;
    } else if (fields[0] == "element") {
      if (fields.size() != 3) {
        throw ParseError(Location::Line, lineno, "malformed element declaration");
      }
      const long long count = parse_integer(fields[2], lineno);
      if (count < 0) {
        throw ParseError(Location::Line, lineno, "negative element count");
      }
      elements.push_back({std::string(fields[1]), static_cast<std::size_t>(count), {}});
    } else if (fields[0] == "property") {
      if (elements.empty()) {
        throw ParseError(Location::Line, lineno, "property before any element");
      }
      if (fields.size() >= 5 && fields[1] == "list") {
        elements.back().properties.push_back({std::string(fields[4]), true});
      } else if (fields.size() == 3) {
        elements.back().properties.push_back({std::string(fields[2]), false});
      } else {
        throw ParseError(Location::Line, lineno, "malformed property declaration");
      }
    } else if (fields[0] == "end_header") {
      header_done = true;
      break;
    } else if (fields[0] != "comment" && fields[0] != "obj_info") {
      throw ParseError(Location::Line, lineno, "unknown header keyword '" + std::string(fields[0]) + "'");
    }
  }
  if (!header_done) {
    throw ParseError(Location::Line, reader.number(), "header is not terminated by end_header");
  }
  if (!format_seen) {
    throw ParseError(Location::Line, reader.number(), "header lacks a format line");
  }

  Mesh mesh;
  std::vector<std::uint32_t> polygon;
  for (const auto& element : elements) {
    int xyz[3] = {-1, -1, -1};
    int index_list = -1;
    for (std::size_t p = 0; p < element.properties.size(); ++p) {
      const auto& prop = element.properties[p];
      if (!prop.is_list) {
        if (prop.name == "x") xyz[0] = static_cast<int>(p);
        if (prop.name == "y") xyz[1] = static_cast<int>(p);
        if (prop.name == "z") xyz[2] = static_cast<int>(p);
      } else if (index_list < 0 && (prop.name == "vertex_indices" || prop.name == "vertex_index")) {
        index_list = static_cast<int>(p);
      }
    }
    const bool is_vertex = element.name == "vertex";
    const bool is_face = element.name == "face";
    if (is_vertex && (xyz[0] < 0 || xyz[1] < 0 || xyz[2] < 0)) {
      throw ParseError(Location::Line, reader.number(), "vertex element lacks x/y/z properties");
    }
    if (is_face && index_list < 0) {
      throw ParseError(Location::Line, reader.number(), "face element lacks a vertex index list");
    }

    for (std::size_t n = 0; n < element.count; ++n) {
      if (!reader.next(line)) {
        throw ParseError(Location::Line, reader.number() + 1,
                         "file ends inside element '" + element.name + "'");
      }
      const std::size_t lineno = reader.number();
      const auto fields = split_ws(line);
      std::size_t cursor = 0;
      Vec3 position;
      polygon.clear();
      for (std::size_t p = 0; p < element.properties.size(); ++p) {
        if (cursor >= fields.size()) {
          throw ParseError(Location::Line, lineno, "too few values for element '" + element.name + "'");
        }
        if (element.properties[p].is_list) {
          const long long len = parse_integer(fields[cursor++], lineno);
          if (len < 0 || cursor + static_cast<std::size_t>(len) > fields.size()) {
            throw ParseError(Location::Line, lineno, "list length does not match its values");
          }
          for (long long e = 0; e < len; ++e) {
            const auto token = fields[cursor++];
            if (is_face && static_cast<int>(p) == index_list) {
              const long long v = parse_integer(token, lineno);
              if (v < 0 || v > static_cast<long long>(UINT32_MAX)) {
                throw StructuralError("line " + std::to_string(lineno) + ": vertex index out of range");
              }
              polygon.push_back(static_cast<std::uint32_t>(v));
            }
          }
        } else {
          const auto token = fields[cursor++];
          if (is_vertex) {
            for (int axis = 0; axis < 3; ++axis) {
              if (static_cast<int>(p) == xyz[axis]) {
                position[axis] = parse_double(token, lineno);
              }
            }
          }
        }
      }
      if (cursor != fields.size()) {
        throw ParseError(Location::Line, lineno, "too many values for element '" + element.name + "'");
      }
      if (is_vertex) {
        mesh.vertices.push_back(position);
      } else if (is_face) {
        if (polygon.size() < 3) {
          throw ParseError(Location::Line, lineno, "face needs at least three vertices");
        }
        triangulate_fan(polygon, mesh.faces);
      }
    }
  }
  check_indices(mesh);
  return mesh;
}

}  // namespace

std::optional<MeshFormat> format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".obj") {
    return MeshFormat::Obj;
  }
  if (ext == ".ply") {
    return MeshFormat::PlyAscii;
  }
  return std::nullopt;
}

Mesh load_mesh(std::string_view bytes, MeshFormat format) {
  switch (format) {
    case MeshFormat::Obj:
      return parse_obj(bytes);
    case MeshFormat::PlyAscii:
      return parse_ply(bytes);
  }
  throw DomainError("unknown mesh format");
}

Mesh load_mesh_file(const std::filesystem::path& path) {
  const auto format = format_from_path(path);
  if (!format) {
    throw DomainError("unrecognized mesh extension: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_mesh(buffer.str(), *format);
}

void write_obj(std::ostream& out, const Mesh& mesh) {
  const auto old_precision = out.precision(17);
  for (const auto& v : mesh.vertices) {
    out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  out.precision(old_precision);
}

void write_obj_file(const std::filesystem::path& path, const Mesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  write_obj(out, mesh);
  if (!out) {
    throw Error("write failed: " + path.string());
  }
}

}  // namespace meshtok
