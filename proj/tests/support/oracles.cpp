#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace meshtok::testing {

std::vector<FaceKey> canonical_faces(const QuantizedMesh& mesh) {
  std::vector<FaceKey> out;
  out.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    FaceKey key{mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]};
    const auto lead = std::min_element(key.begin(), key.end());
    std::rotate(key.begin(), lead, key.end());
    out.push_back(key);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GridPoint> referenced_vertices(const QuantizedMesh& mesh) {
  std::vector<GridPoint> out;
  for (const auto& f : mesh.faces) {
    for (const auto v : f) out.push_back(mesh.vertices[v]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

double directed_mean(std::span<const Vec3> from, std::span<const Vec3> to, double& worst) {
  double sum = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) {
      const double dx = p.x - q.x;
      const double dy = p.y - q.y;
      const double dz = p.z - q.z;
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < best) best = d2;
    }
    const double d = std::sqrt(best);
    sum += d;
    if (d > worst) worst = d;
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

double brute_chamfer(std::span<const Vec3> a, std::span<const Vec3> b) {
  double worst = 0.0;
  const double ab = directed_mean(a, b, worst);
  const double ba = directed_mean(b, a, worst);
  return 0.5 * (ab + ba);
}

double brute_hausdorff(std::span<const Vec3> a, std::span<const Vec3> b) {
  double worst = 0.0;
  directed_mean(a, b, worst);
  directed_mean(b, a, worst);
  return worst;
}

double heron_area(const Mesh& mesh) {
  double total = 0.0;
  for (const auto& f : mesh.faces) {
    const Vec3 p = mesh.vertices[f[0]];
    const Vec3 q = mesh.vertices[f[1]];
    const Vec3 r = mesh.vertices[f[2]];
    double s[3] = {norm(p - q), norm(q - r), norm(r - p)};
    // Kahan's stable ordering: a >= b >= c.
    std::sort(s, s + 3, [](double x, double y) { return x > y; });
    const double a = s[0], b = s[1], c = s[2];
    const double prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    total += 0.25 * std::sqrt(std::max(prod, 0.0));
  }
  return total;
}

}  // namespace meshtok::testing
