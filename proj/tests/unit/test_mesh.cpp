#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "oracles.hpp"
#include "ttc/hierarchy.hpp"

using namespace ttc;

namespace {

HierarchyTree box_tree(int cells, CubeSplit split, int refine) {
  HierarchyTree tree =
      make_tree(build_box_mesh({-2, -2, -2}, {2, 2, 2}, cells, split));
  refine_uniform(tree, refine);
  return tree;
}

}  // namespace

TEST_CASE("box mesh: counts and volumes") {
  const TetMesh mesh6 = build_box_mesh({-2, -2, -2}, {2, 2, 2}, 1);
  CHECK(mesh6.tets.size() == 6);
  double volume = 0.0;
  for (const auto& t : mesh6.tets) {
    const auto c = mesh6.corners(t);
    const double v = signed_volume(c[0], c[1], c[2], c[3]);
    CHECK(v == doctest::Approx(64.0 / 6.0).epsilon(1e-13));
    volume += v;
  }
  CHECK(volume == doctest::Approx(64.0).epsilon(1e-14));

  CHECK(build_box_mesh({0, 0, 0}, {1, 1, 1}, 2).tets.size() == 48);
  CHECK(build_box_mesh({0, 0, 0}, {1, 1, 1}, 1, CubeSplit::centers24)
            .tets.size() == 24);

  // every tet of the uniform split has volume box/(count)
  const TetMesh mesh24 =
      build_box_mesh({0, 0, 0}, {1, 2, 3}, 2, CubeSplit::centers24);
  for (const auto& t : mesh24.tets) {
    const auto c = mesh24.corners(t);
    CHECK(std::abs(signed_volume(c[0], c[1], c[2], c[3])) ==
          doctest::Approx(6.0 / (24.0 * 8.0)).epsilon(1e-12));
  }
}

TEST_CASE("box mesh: degenerate input") {
  CHECK_THROWS_AS(build_box_mesh({0, 0, 0}, {1, 0, 1}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_box_mesh({0, 0, 0}, {-1, 1, 1}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_box_mesh({0, 0, 0}, {1, 1, 1}, 0),
                  std::invalid_argument);
}

TEST_CASE("refine_uniform: leaf counts match 8^times") {
  HierarchyTree tree = box_tree(1, CubeSplit::kuhn6, 2);
  CHECK(tree.leaves.size() == 384);
  CHECK(tree.depth == 3);

  // the paper-scale mesh: 24-element base refined twice
  HierarchyTree tree24 = box_tree(1, CubeSplit::centers24, 2);
  CHECK(tree24.leaves.size() == 1536);
}

TEST_CASE("refine_uniform: children volumes are exactly parent/8") {
  HierarchyTree tree = box_tree(1, CubeSplit::centers24, 1);
  for (int32_t id = 0; id < int32_t(tree.nodes.size()); ++id) {
    const TreeNode& node = tree.nodes[id];
    if (node.is_leaf()) continue;
    double sum = 0.0;
    for (int c = 0; c < 8; ++c) {
      const TreeNode& child = tree.nodes[node.first_child + c];
      CHECK(child.volume ==
            doctest::Approx(node.volume / 8.0).epsilon(1e-12));
      CHECK(child.parent == id);
      CHECK(child.level == node.level + 1);
      sum += child.volume;
    }
    CHECK(sum == doctest::Approx(node.volume).epsilon(1e-12));
  }
}

TEST_CASE("tree invariants: leaf tiling and barycenters inside parents") {
  for (const CubeSplit split : {CubeSplit::kuhn6, CubeSplit::centers24}) {
    for (int refine = 0; refine <= 2; ++refine) {
      HierarchyTree tree = box_tree(1, split, refine);
      double leaf_volume = 0.0;
      for (int32_t leaf : tree.leaves)
        leaf_volume += tree.nodes[leaf].volume;
      CHECK(leaf_volume ==
            doctest::Approx(tree.domain_volume).epsilon(1e-10));

      for (const TreeNode& node : tree.nodes) {
        if (node.parent < 0) continue;
        const auto lam = oracles::barycentric_coords(
            tree.corners(node.parent), node.barycenter);
        for (double l : lam) CHECK(l >= -1e-12);
      }
    }
  }
}

TEST_CASE("refinement deduplicates vertices geometrically") {
  HierarchyTree tree = box_tree(1, CubeSplit::kuhn6, 2);
  const double h = 1.0;  // finest edge scale for this box
  std::set<std::array<int64_t, 3>> snapped;
  for (const auto& v : tree.vertices) {
    const auto key = std::array<int64_t, 3>{
        int64_t(std::llround(v.x / (1e-12 * h))),
        int64_t(std::llround(v.y / (1e-12 * h))),
        int64_t(std::llround(v.z / (1e-12 * h)))};
    CHECK(snapped.insert(key).second);
  }
}

TEST_CASE("shape regularity is depth-independent") {
  // one refinement closes the set of similarity classes; the worst
  // radius/volume ratio is then identical at every depth
  for (const CubeSplit split : {CubeSplit::kuhn6, CubeSplit::centers24}) {
    double first_ratio = -1.0;
    for (int refine = 1; refine <= 3; ++refine) {
      HierarchyTree tree = box_tree(1, split, refine);
      double worst = 0.0;
      for (int32_t leaf : tree.leaves) {
        const TreeNode& node = tree.nodes[leaf];
        worst = std::max(worst, node.max_radius / std::cbrt(node.volume));
      }
      if (first_ratio < 0.0)
        first_ratio = worst;
      else
        CHECK(worst == doctest::Approx(first_ratio).epsilon(1e-10));
    }
  }
}

TEST_CASE("barycenter basics") {
  const std::array<Point3, 4> unit = {
      Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}};
  const Point3 c = barycenter(unit);
  CHECK(c.x == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.y == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.z == doctest::Approx(0.25).epsilon(1e-15));

  std::array<Point3, 4> shifted = unit;
  for (auto& p : shifted) p = p + Point3{3, -1, 2};
  const Point3 cs = barycenter(shifted);
  CHECK(cs.x == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(cs.y == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(cs.z == doctest::Approx(2.25).epsilon(1e-15));

  // regular tetrahedron centered at the origin
  const std::array<Point3, 4> regular = {
      Point3{1, 1, 1}, Point3{1, -1, -1}, Point3{-1, 1, -1},
      Point3{-1, -1, 1}};
  const Point3 cr = barycenter(regular);
  CHECK(std::abs(cr.x) < 1e-15);
  CHECK(std::abs(cr.y) < 1e-15);
  CHECK(std::abs(cr.z) < 1e-15);
}

TEST_CASE("max_radius: unit tet value and scaling homogeneity") {
  const std::array<Point3, 4> unit = {
      Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}};
  CHECK(max_radius(unit) ==
        doctest::Approx(std::sqrt(0.6875)).epsilon(1e-14));

  std::array<Point3, 4> scaled = unit;
  for (auto& p : scaled) p = p * 3.5;
  CHECK(max_radius(scaled) ==
        doctest::Approx(3.5 * std::sqrt(0.6875)).epsilon(1e-14));

  const std::array<Point3, 4> degenerate = {
      Point3{1, 2, 3}, Point3{1, 2, 3}, Point3{1, 2, 3}, Point3{1, 2, 3}};
  CHECK(max_radius(degenerate) == 0.0);
}

TEST_CASE("shares_vertex") {
  HierarchyTree tree = box_tree(1, CubeSplit::kuhn6, 0);
  CHECK(shares_vertex(tree, 0, 0));
  // all six tets of the split share the cube diagonal
  for (int32_t a = 0; a < 6; ++a)
    for (int32_t b = 0; b < 6; ++b) CHECK(shares_vertex(tree, a, b));

  HierarchyTree big = box_tree(4, CubeSplit::kuhn6, 0);
  // opposite corners of a 4-cell box cannot touch
  int32_t lo_leaf = -1, hi_leaf = -1;
  for (int32_t id : big.leaves) {
    const Point3 c = big.nodes[id].barycenter;
    if (c.x < -1.2 && c.y < -1.2 && c.z < -1.2) lo_leaf = id;
    if (c.x > 1.2 && c.y > 1.2 && c.z > 1.2) hi_leaf = id;
  }
  REQUIRE(lo_leaf >= 0);
  REQUIRE(hi_leaf >= 0);
  CHECK_FALSE(shares_vertex(big, lo_leaf, hi_leaf));

  HierarchyTree refined = box_tree(1, CubeSplit::kuhn6, 1);
  CHECK_THROWS_AS(shares_vertex(refined, refined.roots[0],
                                refined.leaves[0]),
                  std::invalid_argument);
}

TEST_CASE("mesh file round trip") {
  const TetMesh mesh =
      build_box_mesh({-1, 0, 2}, {3, 5, 4}, 2, CubeSplit::centers24);
  const std::string path = "test_mesh_roundtrip.txt";
  save_mesh(mesh, path);
  const TetMesh loaded = load_mesh(path);
  REQUIRE(loaded.vertices.size() == mesh.vertices.size());
  REQUIRE(loaded.tets.size() == mesh.tets.size());
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    CHECK(loaded.vertices[i].x == mesh.vertices[i].x);
    CHECK(loaded.vertices[i].y == mesh.vertices[i].y);
    CHECK(loaded.vertices[i].z == mesh.vertices[i].z);
  }
  for (size_t i = 0; i < mesh.tets.size(); ++i)
    CHECK(loaded.tets[i].v == mesh.tets[i].v);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_mesh("does_not_exist.mesh"), std::runtime_error);

  // malformed contents
  const std::string bad = "test_mesh_bad.txt";
  {
    std::ofstream out(bad);
    out << "not a header\n";
  }
  CHECK_THROWS_AS(load_mesh(bad), std::runtime_error);
  {
    std::ofstream out(bad);
    out << "1 1\n0 0 0\n0 1 2 9\n";  // vertex index out of range
  }
  CHECK_THROWS_AS(load_mesh(bad), std::runtime_error);
  std::remove(bad.c_str());
}
