#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "meshtok/geometry.hpp"

namespace meshtok {

/// Static 3-d tree over a point set for exact nearest-neighbor queries.
class PointIndex {
 public:
  explicit PointIndex(std::span<const Vec3> points);

  /// Smallest squared_distance(query, p) over the indexed points. The value
  /// equals an exhaustive scan bit for bit.
  double nearest_squared(Vec3 query) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Node {
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t left;
    std::int32_t right;
    int axis;
    double split;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end, int depth);
  void search(std::int32_t node, Vec3 query, double& best) const;

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
};

/// Distance from every point of `from` to its nearest neighbor in `to`, in input order.
std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to);

/// 0.5 * (mean_a min_b |a-b| + mean_b min_a |a-b|), non-squared Euclidean.
/// Throws DomainError if either set is empty.
double chamfer(std::span<const Vec3> a, std::span<const Vec3> b);

/// max(max_a min_b |a-b|, max_b min_a |a-b|). Throws DomainError if either set is empty.
double hausdorff(std::span<const Vec3> a, std::span<const Vec3> b);

struct MetricReport {
  double chamfer = 0.0;
  double hausdorff = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

/// Samples `count` surface points from each mesh (same seed for both) and
/// compares the two samples.
MetricReport evaluate_pair(const Mesh& reference, const Mesh& generated, std::size_t count,
                           std::uint64_t seed);

MetricReport evaluate_pair(const Mesh& reference, const Mesh& generated, std::size_t count,
                           std::uint64_t reference_seed, std::uint64_t generated_seed);

}  // namespace meshtok
