#include "meshtok/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meshtok/error.hpp"
#include "meshtok/sampling.hpp"

namespace meshtok {
namespace {

constexpr std::uint32_t kLeafSize = 8;

void require_points(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.empty() || b.empty()) {
    throw DomainError("point sets must be nonempty");
  }
}

}  // namespace

PointIndex::PointIndex(std::span<const Vec3> points) : points_(points.begin(), points.end()) {
  if (points_.size() > UINT32_MAX) {
    throw DomainError("too many points to index");
  }
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(points_.size()), 0);
  }
}

std::int32_t PointIndex::build(std::uint32_t begin, std::uint32_t end, int depth) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end, -1, -1, 0, 0.0});
  if (end - begin <= kLeafSize) {
    return id;
  }
  // Split on the widest axis of this node's points.
  Vec3 lo = points_[begin];
  Vec3 hi = points_[begin];
  for (auto n = begin; n < end; ++n) {
    for (int axis = 0; axis < 3; ++axis) {
      lo[axis] = std::min(lo[axis], points_[n][axis]);
      hi[axis] = std::max(hi[axis], points_[n][axis]);
    }
  }
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  }
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(points_.begin() + begin, points_.begin() + mid, points_.begin() + end,
                   [axis](const Vec3& l, const Vec3& r) { return l[axis] < r[axis]; });
  // Left holds coordinates <= split, right holds coordinates >= split.
  const double split = points_[mid][axis];
  const std::int32_t left = build(begin, mid, depth + 1);
  const std::int32_t right = build(mid, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  return id;
}

void PointIndex::search(std::int32_t node_id, Vec3 query, double& best) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_id)];
  if (node.left < 0) {
    for (auto n = node.begin; n < node.end; ++n) {
      best = std::min(best, squared_distance(query, points_[n]));
    }
    return;
  }
  const double delta = query[node.axis] - node.split;
  const std::int32_t near = delta <= 0.0 ? node.left : node.right;
  const std::int32_t far = delta <= 0.0 ? node.right : node.left;
  search(near, query, best);
  // Rounding is monotone, so every point across the plane is at least
  // delta^2 away in floating point too; skipping is exact.
  if (delta * delta <= best) {
    search(far, query, best);
  }
}

double PointIndex::nearest_squared(Vec3 query) const {
  if (nodes_.empty()) {
    throw DomainError("nearest neighbor query on an empty index");
  }
  double best = std::numeric_limits<double>::infinity();
  search(0, query, best);
  return best;
}

std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to) {
  require_points(from, to);
  const PointIndex index(to);
  std::vector<double> out;
  out.reserve(from.size());
  for (const auto& p : from) {
    out.push_back(std::sqrt(index.nearest_squared(p)));
  }
  return out;
}

double chamfer(std::span<const Vec3> a, std::span<const Vec3> b) {
  require_points(a, b);
  const auto mean = [](const std::vector<double>& d) {
    double sum = 0.0;
    for (const double v : d) sum += v;
    return sum / static_cast<double>(d.size());
  };
  return 0.5 * (mean(nearest_distances(a, b)) + mean(nearest_distances(b, a)));
}

double hausdorff(std::span<const Vec3> a, std::span<const Vec3> b) {
  require_points(a, b);
  double worst = 0.0;
  for (const double d : nearest_distances(a, b)) worst = std::max(worst, d);
  for (const double d : nearest_distances(b, a)) worst = std::max(worst, d);
  return worst;
}

MetricReport evaluate_pair(const Mesh& reference, const Mesh& generated, std::size_t count,
                           std::uint64_t seed) {
  return evaluate_pair(reference, generated, count, seed, seed);
}

MetricReport evaluate_pair(const Mesh& reference, const Mesh& generated, std::size_t count,
                           std::uint64_t reference_seed, std::uint64_t generated_seed) {
  if (count == 0) {
    throw DomainError("sample count must be positive");
  }
  const PointSet ref = sample_surface(reference, count, reference_seed);
  const PointSet gen = sample_surface(generated, count, generated_seed);
  MetricReport report;
  report.chamfer = chamfer(ref.points, gen.points);
  report.hausdorff = hausdorff(ref.points, gen.points);
  report.sample_count = count;
  report.seed = reference_seed;
  return report;
}

}  // namespace meshtok
