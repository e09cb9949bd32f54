#include "meshtok/mesh_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "meshtok/error.hpp"

namespace meshtok {

void Mesh::validate() const {
  const auto n = vertices.size();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (const auto v : faces[f]) {
      if (v >= n) {
        throw StructuralError("face " + std::to_string(f) + " references missing vertex " +
                              std::to_string(v));
      }
    }
  }
}

void QuantizedMesh::validate() const {
  if (resolution < 1) {
    throw DomainError("resolution must be positive");
  }
  std::map<GridPoint, std::size_t> seen;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& q = vertices[v];
    for (int axis = 0; axis < 3; ++axis) {
      if (q[axis] < 0 || q[axis] >= resolution) {
        throw DomainError("vertex " + std::to_string(v) + " lies outside the grid");
      }
    }
    if (!seen.emplace(q, v).second) {
      throw StructuralError("vertices " + std::to_string(seen[q]) + " and " + std::to_string(v) +
                            " share a grid point");
    }
  }
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    for (const auto v : face) {
      if (v >= vertices.size()) {
        throw StructuralError("face " + std::to_string(f) + " references missing vertex " +
                              std::to_string(v));
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw StructuralError("face " + std::to_string(f) + " repeats a vertex");
    }
  }
}

BoundingBox bounding_box(const Mesh& mesh) {
  if (mesh.vertices.empty()) {
    throw DegenerateInputError("mesh has no vertices");
  }
  BoundingBox box{mesh.vertices.front(), mesh.vertices.front()};
  for (const auto& v : mesh.vertices) {
    for (int axis = 0; axis < 3; ++axis) {
      box.min[axis] = std::min(box.min[axis], v[axis]);
      box.max[axis] = std::max(box.max[axis], v[axis]);
    }
  }
  return box;
}

NormalizedMesh normalize(const Mesh& mesh) {
  mesh.validate();
  const BoundingBox box = bounding_box(mesh);
  const Vec3 extent = box.extent();
  const double longest = std::max({extent.x, extent.y, extent.z});
  if (!(longest > 0.0) || !std::isfinite(longest)) {
    throw DegenerateInputError("mesh has zero or non-finite extent");
  }

  NormalizationTransform transform;
  transform.scale = 1.0 / longest;
  for (int axis = 0; axis < 3; ++axis) {
    // Shorter axes are centered: pad half of the unused range on each side.
    transform.translation[axis] = -box.min[axis] + 0.5 * (longest - extent[axis]);
  }

  NormalizedMesh out{mesh, transform};
  for (auto& v : out.mesh.vertices) {
    for (int axis = 0; axis < 3; ++axis) {
      const double shifted = v[axis] + transform.translation[axis];
      // Division keeps max == 1 exact on the longest axis.
      v[axis] = std::clamp(shifted / longest, 0.0, 1.0);
    }
  }
  return out;
}

QuantizedMesh quantize(const Mesh& mesh, int resolution, QuantizeStats* stats) {
  if (resolution < 2) {
    throw DomainError("resolution must be at least 2");
  }
  mesh.validate();

  QuantizedMesh out;
  out.resolution = resolution;
  std::map<GridPoint, std::uint32_t> slot;
  std::vector<std::uint32_t> remap(mesh.vertices.size());
  const double r = resolution;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    GridPoint q;
    std::int32_t* parts[3] = {&q.x, &q.y, &q.z};
    for (int axis = 0; axis < 3; ++axis) {
      const double c = mesh.vertices[v][axis];
      if (!(c >= 0.0 && c <= 1.0)) {
        throw DomainError("vertex " + std::to_string(v) + " is outside [0,1]^3");
      }
      *parts[axis] = std::min(static_cast<std::int32_t>(std::floor(c * r)), resolution - 1);
    }
    const auto [it, inserted] = slot.emplace(q, static_cast<std::uint32_t>(out.vertices.size()));
    if (inserted) {
      out.vertices.push_back(q);
    }
    remap[v] = it->second;
  }

  out.faces.reserve(mesh.faces.size());
  for (const auto& face : mesh.faces) {
    const Face mapped{remap[face[0]], remap[face[1]], remap[face[2]]};
    if (mapped[0] == mapped[1] || mapped[1] == mapped[2] || mapped[0] == mapped[2]) {
      continue;
    }
    out.faces.push_back(mapped);
  }

  if (stats != nullptr) {
    stats->merged_vertices = mesh.vertices.size() - out.vertices.size();
    stats->dropped_faces = mesh.faces.size() - out.faces.size();
  }
  return out;
}

Mesh dequantize(const QuantizedMesh& qmesh) {
  Mesh out;
  out.faces = qmesh.faces;
  out.vertices.reserve(qmesh.vertices.size());
  const double r = qmesh.resolution;
  for (const auto& q : qmesh.vertices) {
    out.vertices.push_back({(q.x + 0.5) / r, (q.y + 0.5) / r, (q.z + 0.5) / r});
  }
  return out;
}

Mesh rotate90(const Mesh& mesh, Axis axis, int quarter_turns) {
  const int turns = ((quarter_turns % 4) + 4) % 4;
  if (turns == 0 || mesh.vertices.empty()) {
    return mesh;
  }
  // (u, v) is the rotation plane, ordered so a quarter turn maps u -> v.
  int u = 0;
  int v = 1;
  switch (axis) {
    case Axis::X: u = 1; v = 2; break;
    case Axis::Y: u = 2; v = 0; break;
    case Axis::Z: u = 0; v = 1; break;
  }
  const Vec3 center = bounding_box(mesh).center();

  Mesh out = mesh;
  for (auto& p : out.vertices) {
    const double du = p[u] - center[u];
    const double dv = p[v] - center[v];
    double ru = du;
    double rv = dv;
    switch (turns) {
      case 1: ru = -dv; rv = du; break;
      case 2: ru = -du; rv = -dv; break;
      case 3: ru = dv; rv = -du; break;
    }
    p[u] = center[u] + ru;
    p[v] = center[v] + rv;
  }
  return out;
}

double triangle_area(Vec3 a, Vec3 b, Vec3 c) {
  return 0.5 * norm(cross(b - a, c - a));
}

double mesh_area(const Mesh& mesh) {
  mesh.validate();
  double total = 0.0;
  for (const auto& f : mesh.faces) {
    total += triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
  }
  return total;
}

}  // namespace meshtok
