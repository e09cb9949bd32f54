#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mesh_generators.hpp"
#include "meshtok/patches.hpp"

namespace meshtok {
namespace {

QuantizedMesh grid_mesh(std::vector<GridPoint> vertices, std::vector<Face> faces) {
  QuantizedMesh q;
  q.resolution = 512;
  q.vertices = std::move(vertices);
  q.faces = std::move(faces);
  return q;
}

Face rotate_to_front(Face f, std::uint32_t v) {
  while (f[0] != v) f = {f[1], f[2], f[0]};
  return f;
}

// Every face lands in exactly one fan, and each fan triangle is its source face.
void expect_exact_cover(const QuantizedMesh& mesh, const std::vector<Patch>& patches) {
  std::vector<int> covered(mesh.faces.size(), 0);
  for (const auto& p : patches) {
    ASSERT_GE(p.ring.size(), 2u);
    ASSERT_EQ(p.faces.size(), p.ring.size() - 1);
    for (std::size_t t = 0; t + 1 < p.ring.size(); ++t) {
      const auto f = p.faces[t];
      ++covered[f];
      EXPECT_EQ(rotate_to_front(mesh.faces[f], p.center), (Face{p.center, p.ring[t], p.ring[t + 1]}));
    }
    // Pairwise distinct, except a fan that closes on its first vertex.
    std::vector<std::uint32_t> ring = p.ring;
    if (ring.size() > 3 && ring.front() == ring.back()) ring.pop_back();
    std::set<std::uint32_t> unique(ring.begin(), ring.end());
    EXPECT_EQ(unique.size(), ring.size());
    EXPECT_FALSE(unique.contains(p.center));
  }
  for (std::size_t f = 0; f < covered.size(); ++f) {
    EXPECT_EQ(covered[f], 1) << "face " << f;
  }
}

TEST(BuildPatches, SingleTriangle) {
  const auto mesh = grid_mesh({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}, {{0, 1, 2}});
  const auto patches = build_patches(mesh);
  ASSERT_EQ(patches.size(), 1u);
  EXPECT_EQ(patches[0].center, 0u);
  EXPECT_EQ(patches[0].ring, (std::vector<std::uint32_t>{1, 2}));
}

TEST(BuildPatches, CenterTieGoesToSmallestGridPoint) {
  const auto mesh = grid_mesh({{5, 5, 5}, {0, 9, 0}, {0, 0, 9}}, {{0, 1, 2}});
  const auto patches = build_patches(mesh);
  ASSERT_EQ(patches.size(), 1u);
  EXPECT_EQ(patches[0].center, 2u);
  EXPECT_EQ(patches[0].ring, (std::vector<std::uint32_t>{0, 1}));
}

TEST(BuildPatches, ClosedUmbrellaIsOneFan) {
  const auto mesh = testing::to_grid(testing::hexagonal_umbrella());
  const auto patches = build_patches(mesh);
  ASSERT_EQ(patches.size(), 1u);
  EXPECT_EQ(patches[0].center, 0u);  // the hub touches six faces, each rim vertex two
  EXPECT_EQ(patches[0].ring.size(), 7u);
  EXPECT_EQ(patches[0].ring.front(), patches[0].ring.back());
  expect_exact_cover(mesh, patches);
}

TEST(BuildPatches, DisconnectedTrianglesGiveTwoPatches) {
  const auto mesh = grid_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {9, 9, 9}, {8, 9, 9}, {9, 8, 9}},
                              {{0, 1, 2}, {3, 4, 5}});
  const auto patches = build_patches(mesh);
  EXPECT_EQ(patches.size(), 2u);
  expect_exact_cover(mesh, patches);
}

TEST(BuildPatches, GrowsBackwardFromMidFanSeed) {
  // Hub 0 with an open rim 1..5; rim vertex 3 is the smallest point, so the
  // first face in sorted order sits in the middle of the fan.
  const auto mesh = grid_mesh(
      {{100, 100, 100}, {200, 150, 100}, {150, 200, 100}, {0, 0, 0}, {50, 0, 100}, {150, 0, 100}},
      {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}});
  const auto patches = build_patches(mesh);
  ASSERT_EQ(patches.size(), 1u);
  EXPECT_EQ(patches[0].center, 0u);
  EXPECT_EQ(patches[0].ring, (std::vector<std::uint32_t>{1, 2, 3, 4, 5}));
  expect_exact_cover(mesh, patches);
}

TEST(BuildPatches, InconsistentWindingSplitsFan) {
  const auto mesh = grid_mesh({{0, 0, 0}, {10, 0, 0}, {10, 10, 0}, {0, 10, 0}}, {{0, 1, 2}, {0, 3, 2}});
  const auto patches = build_patches(mesh);
  EXPECT_EQ(patches.size(), 2u);
  expect_exact_cover(mesh, patches);
}

TEST(BuildPatches, NonManifoldEdgeStopsGrowth) {
  // Three faces on edge (0,1): fans may not cross it.
  const auto mesh = grid_mesh({{0, 0, 0}, {10, 0, 0}, {5, 10, 0}, {5, -0, 10}, {5, 5, 5}},
                              {{0, 1, 2}, {1, 0, 3}, {1, 0, 4}});
  const auto patches = build_patches(mesh);
  EXPECT_EQ(patches.size(), 3u);
  expect_exact_cover(mesh, patches);
}

TEST(BuildPatches, CoversEveryCorpusMesh) {
  for (const auto& [name, mesh] : testing::acceptance_corpus()) {
    SCOPED_TRACE(name);
    if (mesh.faces.empty()) continue;
    expect_exact_cover(mesh, build_patches(mesh));
  }
}

TEST(BuildPatches, IsDeterministic) {
  const auto mesh = testing::random_fan_complex(512, 30, 99);
  const auto a = build_patches(mesh);
  const auto b = build_patches(mesh);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    EXPECT_EQ(a[n].center, b[n].center);
    EXPECT_EQ(a[n].ring, b[n].ring);
  }
}

}  // namespace
}  // namespace meshtok
