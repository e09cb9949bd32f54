#include <gtest/gtest.h>

#include "mesh_generators.hpp"
#include "meshtok/error.hpp"
#include "meshtok/sampling.hpp"

namespace meshtok {
namespace {

TEST(SampleSurface, PointsLieInsideSingleTriangle) {
  Mesh m;
  m.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 1, 0}};
  m.faces = {{0, 1, 2}};
  const auto set = sample_surface(m, 2000, 500, 9);
  ASSERT_EQ(set.points.size(), 500u);
  for (const auto& p : set.points) {
    // Barycentric coordinates for this right triangle.
    const double u = p.x / 2.0;
    const double v = p.y;
    EXPECT_GE(u, 0.0);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(u + v, 1.0 + 1e-12);
    EXPECT_EQ(p.z, 0.0);
  }
}

TEST(SampleSurface, AreaWeighting) {
  // Areas 1 and 3, far apart along x.
  Mesh m;
  m.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {10, 0, 0}, {13, 0, 0}, {10, 2, 0}};
  m.faces = {{0, 1, 2}, {3, 4, 5}};
  const auto set = sample_surface(m, 100000, 100000, 4);
  std::size_t large = 0;
  for (const auto& p : set.points) {
    if (p.x >= 10.0) ++large;
  }
  EXPECT_NEAR(static_cast<double>(large) / 100000.0, 0.75, 0.01);
}

TEST(SampleSurface, Deterministic) {
  const auto m = testing::icosphere(2);
  const auto a = sample_surface(m, 4096, 1024, 77);
  const auto b = sample_surface(m, 4096, 1024, 77);
  const auto c = sample_surface(m, 4096, 1024, 78);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.seed, 77u);
  EXPECT_NE(a.points, c.points);
}

TEST(SampleSurface, SubsetOfDenseDraw) {
  const auto m = testing::icosphere(1);
  const auto dense = sample_surface(m, 300, 300, 5);
  const auto subset = sample_surface(m, 300, 40, 5);
  for (const auto& p : subset.points) {
    EXPECT_NE(std::find(dense.points.begin(), dense.points.end(), p), dense.points.end());
  }
}

TEST(SampleSurface, Errors) {
  Mesh flat;
  flat.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  flat.faces = {{0, 1, 2}};
  EXPECT_THROW(sample_surface(flat, 10, 1), DegenerateInputError);
  EXPECT_THROW(sample_surface(Mesh{}, 10, 1), DegenerateInputError);
  EXPECT_THROW(sample_surface(testing::icosphere(0), 10, 11, 1), DomainError);
}

}  // namespace
}  // namespace meshtok
