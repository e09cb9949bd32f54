#include <gtest/gtest.h>

#include <random>

#include "mesh_generators.hpp"
#include "meshtok/error.hpp"
#include "meshtok/metrics.hpp"
#include "oracles.hpp"

namespace meshtok {
namespace {

std::vector<Vec3> random_points(std::mt19937_64& gen, std::size_t n, bool lattice) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<int> cell(0, 4);
  std::vector<Vec3> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (lattice) {
      // Many exact ties and coincident points.
      out.push_back({double(cell(gen)), double(cell(gen)), double(cell(gen))});
    } else {
      out.push_back({coord(gen), coord(gen), coord(gen)});
    }
  }
  return out;
}

TEST(Chamfer, HandCases) {
  const std::vector<Vec3> origin = {{0, 0, 0}};
  const std::vector<Vec3> unit_x = {{1, 0, 0}};
  const std::vector<Vec3> pair = {{0, 0, 0}, {2, 0, 0}};
  EXPECT_EQ(chamfer(pair, pair), 0.0);
  EXPECT_EQ(chamfer(origin, unit_x), 1.0);
  EXPECT_EQ(chamfer(pair, unit_x), 1.0);
  EXPECT_EQ(hausdorff(pair, pair), 0.0);
  EXPECT_EQ(hausdorff(origin, unit_x), 1.0);
  EXPECT_EQ(hausdorff(pair, unit_x), 1.0);
  EXPECT_EQ(hausdorff(pair, origin), 2.0);
  EXPECT_THROW(chamfer({}, origin), DomainError);
  EXPECT_THROW(hausdorff(origin, {}), DomainError);
}

TEST(Metrics, MatchExhaustiveOracleExactly) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<std::size_t> size(1, 512);
  for (int trial = 0; trial < 60; ++trial) {
    const bool lattice = trial % 3 == 0;
    const auto a = random_points(gen, size(gen), lattice);
    const auto b = random_points(gen, size(gen), lattice);
    EXPECT_EQ(chamfer(a, b), testing::brute_chamfer(a, b));
    EXPECT_EQ(hausdorff(a, b), testing::brute_hausdorff(a, b));
  }
}

TEST(Metrics, SymmetryAndDominance) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_points(gen, 100, false);
    const auto b = random_points(gen, 80, false);
    const auto c = random_points(gen, 60, false);
    EXPECT_EQ(chamfer(a, b), chamfer(b, a));
    EXPECT_EQ(hausdorff(a, b), hausdorff(b, a));
    EXPECT_GE(hausdorff(a, b), chamfer(a, b));
    EXPECT_LE(hausdorff(a, c), hausdorff(a, b) + hausdorff(b, c) + 1e-12);
  }
}

TEST(Metrics, ZeroOnlyForEqualMultisets) {
  std::vector<Vec3> a = {{0, 0, 0}, {1, 1, 1}, {0, 0, 0}};
  std::vector<Vec3> b = {{1, 1, 1}, {0, 0, 0}, {0, 0, 0}};
  EXPECT_EQ(chamfer(a, b), 0.0);
  b[0].z = 1.0 + 1e-9;
  EXPECT_GT(chamfer(a, b), 0.0);
}

TEST(PointIndex, LargeSetAgainstScan) {
  std::mt19937_64 gen(8);
  const auto pts = random_points(gen, 5000, false);
  const PointIndex index(pts);
  for (const auto& q : random_points(gen, 200, false)) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, squared_distance(q, p));
    EXPECT_EQ(index.nearest_squared(q), best);
  }
}

TEST(EvaluatePair, SameMeshSameSeed) {
  const auto m = testing::icosphere(3);
  const auto report = evaluate_pair(m, m, 1024, 7);
  EXPECT_EQ(report.chamfer, 0.0);
  EXPECT_EQ(report.hausdorff, 0.0);
  EXPECT_EQ(report.sample_count, 1024u);
  EXPECT_EQ(report.seed, 7u);
}

TEST(EvaluatePair, DifferentSeedsStaySmall) {
  const auto m = testing::icosphere(3);
  const auto report = evaluate_pair(m, m, 1024, 1, 2);
  const double diagonal = 2.0 * std::sqrt(3.0);
  EXPECT_GT(report.chamfer, 0.0);
  EXPECT_LT(report.chamfer, diagonal / 10.0);
}

TEST(EvaluatePair, TranslatedCube) {
  const auto a = testing::box({0, 0, 0}, {1, 1, 1});
  const auto b = testing::box({10, 0, 0}, {11, 1, 1});
  const auto report = evaluate_pair(a, b, 1024, 3);
  // Each face of the unit-thick cubes sits 10 - x away from its partner, so
  // the mean lands near 9.5 and the worst case near 10.
  EXPECT_NEAR(report.chamfer, 9.5, 0.1);
  EXPECT_NEAR(report.chamfer, 10.0, 0.6);
  EXPECT_NEAR(report.hausdorff, 10.0, 0.1);
}

}  // namespace
}  // namespace meshtok
