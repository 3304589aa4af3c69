#include "ttc/hierarchy.hpp"

#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace ttc {

namespace {

void fill_geometry(HierarchyTree& tree, TreeNode& node) {
  const std::array<Point3, 4> p = {
      tree.vertices[node.v[0]], tree.vertices[node.v[1]],
      tree.vertices[node.v[2]], tree.vertices[node.v[3]]};
  node.barycenter = barycenter(p);
  node.max_radius = max_radius(p);
  node.volume = std::abs(signed_volume(p[0], p[1], p[2], p[3]));
}

// Midpoint ids are deduplicated across elements: edge (a, b) maps to one id.
struct EdgeMidpoints {
  std::unordered_map<uint64_t, int32_t> ids;

  int32_t get(HierarchyTree& tree, int32_t a, int32_t b) {
    if (a > b) std::swap(a, b);
    const uint64_t key = (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
    auto [it, inserted] = ids.try_emplace(key, int32_t(tree.vertices.size()));
    if (inserted)
      tree.vertices.push_back((tree.vertices[a] + tree.vertices[b]) * 0.5);
    return it->second;
  }
};

// Midpoint refinement: 4 corner children plus 4 from the interior
// octahedron, split along its shortest diagonal. Appends 8 contiguous nodes.
void split_leaf(HierarchyTree& tree, int32_t id, EdgeMidpoints& midpoints) {
  const std::array<int32_t, 4> c = tree.nodes[id].v;
  int32_t mid[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      mid[i][j] = mid[j][i] = midpoints.get(tree, c[i], c[j]);

  const int32_t first = int32_t(tree.nodes.size());
  tree.nodes[id].first_child = first;
  const int32_t level = tree.nodes[id].level + 1;

  auto push_child = [&](int32_t a, int32_t b, int32_t cc, int32_t d) {
    TreeNode child;
    child.v = {a, b, cc, d};
    child.parent = id;
    child.level = level;
    fill_geometry(tree, child);
    tree.nodes.push_back(child);
  };

  push_child(c[0], mid[0][1], mid[0][2], mid[0][3]);
  push_child(mid[0][1], c[1], mid[1][2], mid[1][3]);
  push_child(mid[0][2], mid[1][2], c[2], mid[2][3]);
  push_child(mid[0][3], mid[1][3], mid[2][3], c[3]);

  // Octahedron diagonals pair midpoints of opposite edges.
  const int32_t diag[3][2] = {{mid[0][1], mid[2][3]},
                              {mid[0][2], mid[1][3]},
                              {mid[0][3], mid[1][2]}};
  int best = 0;
  double best_len = distance(tree.vertices[diag[0][0]],
                             tree.vertices[diag[0][1]]);
  for (int i = 1; i < 3; ++i) {
    const double len =
        distance(tree.vertices[diag[i][0]], tree.vertices[diag[i][1]]);
    if (len < best_len) {
      best = i;
      best_len = len;
    }
  }
  const int32_t p = diag[best][0], q = diag[best][1];
  // The remaining four midpoints form the equator cycle around (p, q).
  const int32_t eq[3][4] = {{mid[0][2], mid[0][3], mid[1][2], mid[1][3]},
                            {mid[0][1], mid[0][3], mid[1][2], mid[2][3]},
                            {mid[0][1], mid[0][2], mid[1][3], mid[2][3]}};
  const auto& e = eq[best];
  // cycle order: e[0], e[1], e[3], e[2] shares an octahedron edge stepwise
  push_child(p, q, e[0], e[1]);
  push_child(p, q, e[1], e[3]);
  push_child(p, q, e[3], e[2]);
  push_child(p, q, e[2], e[0]);
}

void refresh_leaves(HierarchyTree& tree) {
  tree.leaves.clear();
  int max_level = 0;
  for (int32_t i = 0; i < int32_t(tree.nodes.size()); ++i) {
    max_level = std::max(max_level, int(tree.nodes[i].level));
    if (tree.nodes[i].is_leaf()) tree.leaves.push_back(i);
  }
  tree.depth = max_level + 1;
}

}  // namespace

HierarchyTree make_tree(const TetMesh& base) {
  HierarchyTree tree;
  tree.vertices = base.vertices;
  tree.nodes.reserve(base.tets.size());
  for (const auto& t : base.tets) {
    TreeNode node;
    node.v = {t.v[0], t.v[1], t.v[2], t.v[3]};
    node.level = 0;
    fill_geometry(tree, node);
    if (node.volume <= 0.0)
      throw std::invalid_argument("make_tree: degenerate element");
    tree.roots.push_back(int32_t(tree.nodes.size()));
    tree.domain_volume += node.volume;
    tree.nodes.push_back(node);
  }
  refresh_leaves(tree);
  return tree;
}

void refine_uniform(HierarchyTree& tree, int times) {
  if (times < 0) throw std::invalid_argument("refine_uniform: times < 0");
  EdgeMidpoints midpoints;
  for (int pass = 0; pass < times; ++pass) {
    const std::vector<int32_t> current = tree.leaves;
    tree.nodes.reserve(tree.nodes.size() + current.size() * 8);
    for (int32_t id : current) split_leaf(tree, id, midpoints);
    refresh_leaves(tree);
  }
}

bool shares_vertex(const HierarchyTree& tree, int32_t a, int32_t b) {
  const TreeNode& na = tree.nodes[a];
  const TreeNode& nb = tree.nodes[b];
  if (na.level != nb.level)
    throw std::invalid_argument("shares_vertex: nodes at different levels");
  for (int32_t va : na.v)
    for (int32_t vb : nb.v)
      if (va == vb) return true;
  return false;
}

}  // namespace ttc
