#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "meshtok/geometry.hpp"

namespace meshtok {

struct PointSet {
  std::vector<Vec3> points;
  std::uint64_t seed = 0;
};

/// Draws `dense_count` area-weighted points over the surface, then keeps a
/// uniformly random subset of `select_count` of them (partial Fisher-Yates).
///
/// Faces are picked with probability proportional to their area and points
/// are barycentric-uniform inside the face. Output is a pure function of the
/// arguments. Throws DegenerateInputError when the surface has zero area and
/// DomainError when select_count > dense_count.
PointSet sample_surface(const Mesh& mesh, std::size_t dense_count, std::size_t select_count,
                        std::uint64_t seed);

/// Shorthand for sample_surface(mesh, count, count, seed).
PointSet sample_surface(const Mesh& mesh, std::size_t count, std::uint64_t seed);

}  // namespace meshtok
