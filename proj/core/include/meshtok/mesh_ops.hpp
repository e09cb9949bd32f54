#pragma once

#include <cstddef>

#include "meshtok/geometry.hpp"

namespace meshtok {

/// Maps model coordinates into [0,1]^3 as (p + translation) * scale.
struct NormalizationTransform {
  Vec3 translation;
  double scale = 1.0;

  Vec3 apply(Vec3 p) const { return (p + translation) * scale; }
  Vec3 invert(Vec3 q) const { return q * (1.0 / scale) - translation; }
};

struct NormalizedMesh {
  Mesh mesh;
  NormalizationTransform transform;
};

/// Scales the longest bounding-box edge to exactly [0,1] and centers the
/// shorter axes inside [0,1], preserving the aspect ratio.
/// Throws DegenerateInputError for an empty or zero-extent mesh.
NormalizedMesh normalize(const Mesh& mesh);

struct QuantizeStats {
  std::size_t merged_vertices = 0;
  std::size_t dropped_faces = 0;
};

/// q = clamp(floor(c * r), 0, r - 1) per component.
///
/// Vertices landing on the same grid point are merged (first occurrence keeps
/// its slot) and faces left with fewer than three distinct vertices are
/// dropped; surviving faces keep their order. Coordinates must lie in [0,1].
QuantizedMesh quantize(const Mesh& mesh, int resolution, QuantizeStats* stats = nullptr);

/// Bin centers: c = (q + 0.5) / r.
Mesh dequantize(const QuantizedMesh& qmesh);

enum class Axis { X, Y, Z };

/// Rotates by quarter_turns * 90 degrees (right-handed) about `axis` through
/// the bounding-box center. Faces are untouched.
Mesh rotate90(const Mesh& mesh, Axis axis, int quarter_turns);

double triangle_area(Vec3 a, Vec3 b, Vec3 c);

/// Total surface area in the mesh's own units. Zero for a mesh without faces.
double mesh_area(const Mesh& mesh);

}  // namespace meshtok
