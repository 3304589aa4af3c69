#pragma once

#include <cstdint>
#include <vector>

#include "ttc/mesh.hpp"

namespace ttc {

/// One tetrahedron of the hierarchy tree. A node has either no children
/// (leaf) or exactly eight, stored as a contiguous id block in the tree.
struct TreeNode {
  std::array<int32_t, 4> v{};  // vertex ids
  int32_t parent = -1;
  int32_t first_child = -1;    // children are first_child .. first_child+7
  int32_t level = 0;
  Point3 barycenter{};
  double max_radius = 0.0;
  double volume = 0.0;

  bool is_leaf() const { return first_child < 0; }
};

/// Octree-of-tetrahedra built by uniform midpoint refinement of a base mesh.
/// Vertices are shared and deduplicated: the midpoint of edge (a, b) gets a
/// single global id no matter how many elements refine that edge.
struct HierarchyTree {
  std::vector<Point3> vertices;
  std::vector<TreeNode> nodes;
  std::vector<int32_t> roots;
  std::vector<int32_t> leaves;  // childless nodes, in node-id order
  int depth = 0;                // number of levels, 1 + max level
  double domain_volume = 0.0;   // sum of root volumes

  std::array<Point3, 4> corners(int32_t id) const {
    const auto& t = nodes[id].v;
    return {vertices[t[0]], vertices[t[1]], vertices[t[2]], vertices[t[3]]};
  }
};

HierarchyTree make_tree(const TetMesh& base);

/// Refines every leaf `times` times. Each step connects the six edge
/// midpoints: four corner tetrahedra plus four from the interior octahedron,
/// split along its shortest diagonal.
void refine_uniform(HierarchyTree& tree, int times);

/// True iff the two elements share at least one vertex id. Both nodes must
/// be at the same level.
bool shares_vertex(const HierarchyTree& tree, int32_t a, int32_t b);

}  // namespace ttc
