#include "meshtok/patches.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <span>

#include "meshtok/error.hpp"

namespace meshtok {
namespace {

// Vertex -> incident faces in compressed-row form.
struct Incidence {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> faces;

  Incidence(std::size_t vertex_count, const std::vector<Face>& mesh_faces)
      : offsets(vertex_count + 1, 0) {
    for (const auto& f : mesh_faces) {
      for (const auto v : f) {
        ++offsets[v + 1];
      }
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    faces.resize(offsets.back());
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t f = 0; f < mesh_faces.size(); ++f) {
      for (const auto v : mesh_faces[f]) {
        faces[cursor[v]++] = f;
      }
    }
  }

  std::span<const std::uint32_t> around(std::uint32_t v) const {
    return {faces.data() + offsets[v], faces.data() + offsets[v + 1]};
  }
};

// Face rotated so that `first` leads; the winding is unchanged.
Face rotated_to(const Face& f, std::uint32_t first) {
  if (f[1] == first) return {f[1], f[2], f[0]};
  if (f[2] == first) return {f[2], f[0], f[1]};
  return f;
}

class Traversal {
 public:
  explicit Traversal(const QuantizedMesh& qmesh)
      : mesh_(qmesh),
        incidence_(qmesh.vertices.size(), qmesh.faces),
        visited_(qmesh.faces.size(), false),
        unvisited_(qmesh.vertices.size(), 0),
        ring_stamp_(qmesh.vertices.size(), 0) {
    for (std::uint32_t v = 0; v < qmesh.vertices.size(); ++v) {
      unvisited_[v] = static_cast<std::uint32_t>(incidence_.around(v).size());
    }
  }

  std::vector<Patch> run() {
    std::vector<Patch> patches;
    for (const auto f : sorted_faces()) {
      if (!visited_[f]) {
        patches.push_back(grow(f));
      }
    }
    return patches;
  }

 private:
  std::vector<std::uint32_t> sorted_faces() const {
    const auto& verts = mesh_.vertices;
    std::vector<std::array<GridPoint, 3>> keys;
    keys.reserve(mesh_.faces.size());
    for (const auto& f : mesh_.faces) {
      std::uint32_t lead = f[0];
      for (const auto v : f) {
        if (verts[v] < verts[lead]) lead = v;
      }
      const Face r = rotated_to(f, lead);
      keys.push_back({verts[r[0]], verts[r[1]], verts[r[2]]});
    }
    std::vector<std::uint32_t> order(mesh_.faces.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t l, std::uint32_t r) { return keys[l] < keys[r]; });
    return order;
  }

  void visit(std::uint32_t f) {
    visited_[f] = true;
    for (const auto v : mesh_.faces[f]) {
      --unvisited_[v];
    }
  }

  // Faces around `center` that also contain `other`.
  std::size_t edge_valence(std::uint32_t center, std::uint32_t other) const {
    std::size_t count = 0;
    for (const auto g : incidence_.around(center)) {
      const auto& f = mesh_.faces[g];
      if (f[0] == other || f[1] == other || f[2] == other) ++count;
    }
    return count;
  }

  // An unvisited face around `center` whose winding contains center -> to (forward)
  // or to -> center (backward). Returns it rotated to start at center.
  std::optional<std::pair<std::uint32_t, Face>> next_face(std::uint32_t center, std::uint32_t to,
                                                          bool forward) const {
    if (edge_valence(center, to) > 2) {
      return std::nullopt;
    }
    for (const auto g : incidence_.around(center)) {
      if (visited_[g]) continue;
      const Face r = rotated_to(mesh_.faces[g], center);
      if ((forward ? r[1] : r[2]) == to) {
        return std::pair{g, r};
      }
    }
    return std::nullopt;
  }

  Patch grow(std::uint32_t seed) {
    ++stamp_;
    const auto& f = mesh_.faces[seed];
    const auto& verts = mesh_.vertices;
    std::uint32_t center = f[0];
    for (const auto v : f) {
      if (unvisited_[v] > unvisited_[center] ||
          (unvisited_[v] == unvisited_[center] && verts[v] < verts[center])) {
        center = v;
      }
    }
    const Face start = rotated_to(f, center);

    Patch patch;
    patch.center = center;
    patch.ring = {start[1], start[2]};
    patch.faces = {seed};
    ring_stamp_[start[1]] = stamp_;
    ring_stamp_[start[2]] = stamp_;
    visit(seed);

    bool closed = false;
    while (auto step = next_face(center, patch.ring.back(), true)) {
      const auto [g, r] = *step;
      const std::uint32_t next = r[2];
      if (next == patch.ring.front() && patch.ring.size() >= 3) {
        closed = true;
      } else if (ring_stamp_[next] == stamp_) {
        break;
      }
      patch.ring.push_back(next);
      patch.faces.push_back(g);
      ring_stamp_[next] = stamp_;
      visit(g);
      if (closed) break;
    }

    if (!closed) {
      std::vector<std::uint32_t> prefix;
      std::vector<std::uint32_t> prefix_faces;
      std::uint32_t front = patch.ring.front();
      while (auto step = next_face(center, front, false)) {
        const auto [g, r] = *step;
        const std::uint32_t prev = r[1];
        if (ring_stamp_[prev] == stamp_) break;
        prefix.push_back(prev);
        prefix_faces.push_back(g);
        ring_stamp_[prev] = stamp_;
        visit(g);
        front = prev;
      }
      if (!prefix.empty()) {
        patch.ring.insert(patch.ring.begin(), prefix.rbegin(), prefix.rend());
        patch.faces.insert(patch.faces.begin(), prefix_faces.rbegin(), prefix_faces.rend());
      }
    }
    return patch;
  }

  const QuantizedMesh& mesh_;
  Incidence incidence_;
  std::vector<bool> visited_;
  std::vector<std::uint32_t> unvisited_;
  std::vector<std::uint32_t> ring_stamp_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

std::vector<Patch> build_patches(const QuantizedMesh& qmesh) {
  qmesh.validate();
  if (qmesh.faces.size() > UINT32_MAX / 3) {
    throw DomainError("mesh has too many faces");
  }
  return Traversal(qmesh).run();
}

}  // namespace meshtok
