#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <vector>

namespace meshtok {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a * s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Squared Euclidean distance, evaluated as dx*dx + dy*dy + dz*dz in that order.
constexpr double squared_distance(Vec3 a, Vec3 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

/// Integer grid coordinate of a quantized vertex. Ordered lexicographically by (x, y, z).
struct GridPoint {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  constexpr std::int32_t operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

using Face = std::array<std::uint32_t, 3>;

/// Triangle mesh with real-valued positions. Faces index into `vertices`.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  /// Throws StructuralError if any face references a missing vertex.
  void validate() const;
};

/// Triangle mesh on an r x r x r integer grid.
///
/// Valid instances have every coordinate in [0, r-1], no two vertices on the
/// same grid point and no face that repeats a vertex index.
struct QuantizedMesh {
  int resolution = 512;
  std::vector<GridPoint> vertices;
  std::vector<Face> faces;

  /// Throws StructuralError or DomainError when an invariant above is broken.
  void validate() const;
};

struct BoundingBox {
  Vec3 min;
  Vec3 max;

  Vec3 extent() const { return max - min; }
  Vec3 center() const { return (min + max) * 0.5; }
};

/// Bounding box of all vertices (referenced or not). Requires a nonempty vertex list.
BoundingBox bounding_box(const Mesh& mesh);

}  // namespace meshtok
