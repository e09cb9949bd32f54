#pragma once

#include <cstdint>
#include <vector>

#include "meshtok/geometry.hpp"

namespace meshtok {

/// A triangle fan: faces (center, ring[t], ring[t+1]) for t in [0, ring.size()-1).
///
/// Ring vertices are pairwise distinct and differ from the center, except
/// that a fan of three or more faces closing all the way around its center
/// repeats ring[0] as
/// its last entry.
struct Patch {
  std::uint32_t center = 0;
  std::vector<std::uint32_t> ring;
  /// Source face indices covered by the fan, in ring order.
  std::vector<std::uint32_t> faces;

  std::size_t face_count() const { return ring.size() - 1; }
};

/// Partitions the faces of a valid quantized mesh into fans.
///
/// Faces are visited in order of their canonical vertex triples (each triple
/// rotated to start at its smallest grid point, then compared
/// lexicographically). The first unvisited face seeds a patch whose center is
/// the seed vertex touching the most unvisited faces, ties going to the
/// smallest grid point. The fan grows forward along the seed face's winding,
/// then backward, and stops at visited faces, boundaries, edges shared by more
/// than two faces, and vertices already on the ring.
std::vector<Patch> build_patches(const QuantizedMesh& qmesh);

}  // namespace meshtok
