#include "meshtok/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "meshtok/error.hpp"
#include "meshtok/mesh_ops.hpp"
#include "meshtok/random.hpp"

namespace meshtok {

PointSet sample_surface(const Mesh& mesh, std::size_t dense_count, std::size_t select_count,
                        std::uint64_t seed) {
  if (select_count > dense_count) {
    throw DomainError("cannot select more points than were sampled");
  }
  mesh.validate();

  std::vector<double> cumulative;
  cumulative.reserve(mesh.faces.size());
  double total = 0.0;
  for (const auto& f : mesh.faces) {
    total += triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
    cumulative.push_back(total);
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateInputError("mesh surface has no area to sample");
  }

  Rng rng(seed);
  std::vector<Vec3> dense;
  dense.reserve(dense_count);
  for (std::size_t n = 0; n < dense_count; ++n) {
    const double target = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) {
      --it;
    }
    const auto& f = mesh.faces[static_cast<std::size_t>(it - cumulative.begin())];
    const Vec3 a = mesh.vertices[f[0]];
    const Vec3 b = mesh.vertices[f[1]];
    const Vec3 c = mesh.vertices[f[2]];

    const double s = std::sqrt(rng.uniform());
    const double t = rng.uniform();
    const double wa = 1.0 - s;
    const double wb = s * (1.0 - t);
    const double wc = s * t;
    dense.push_back(a * wa + b * wb + c * wc);
  }

  // Partial Fisher-Yates: the first select_count slots become the sample.
  for (std::size_t n = 0; n < select_count; ++n) {
    const std::size_t pick = n + static_cast<std::size_t>(rng.below(dense_count - n));
    std::swap(dense[n], dense[pick]);
  }
  dense.resize(select_count);
  return PointSet{std::move(dense), seed};
}

PointSet sample_surface(const Mesh& mesh, std::size_t count, std::uint64_t seed) {
  return sample_surface(mesh, count, count, seed);
}

}  // namespace meshtok
