#pragma once

#include <span>
#include <string>
#include <vector>

#include "ttc/hierarchy.hpp"

namespace ttc {

/// Separation data for a (target point, source node) pair.
struct MacGeometry {
  double r_y = 0.0;  // source node max radius
  double R_K = 0.0;  // distance from target to source barycenter
  double r_K = 0.0;  // ratio r_y / R_K; admissible when < 1
};

MacGeometry mac_geometry(const Point3& target, const TreeNode& node);

// Default admissibility threshold for far nodes. Vertex sharing alone only
// guarantees r_K < 1, and coarse-level pairs approach that limit, where the
// error constant (1 - r_K)^-1 and the selected orders blow up. Far
// candidates at or above this ratio are demoted into their children.
inline constexpr double default_demote_ratio = 2.0 / 3.0;

struct InteractionOptions {
  // Far candidates with r_K >= demote_ratio are recursed into (leaves go to
  // the near list). 1.0 keeps every admissible node; 0.0 demotes
  // everything, reducing the treecode to direct summation.
  double demote_ratio = default_demote_ratio;
  bool verify_coverage = true;
};

/// Per-leaf near/far classification, CSR over leaf positions.
/// Near entries are leaf positions (sorted, including the leaf itself);
/// far entries are tree node ids with their tree level.
struct InteractionLists {
  std::vector<int32_t> neighbors;
  std::vector<size_t> neighbor_offsets;
  std::vector<int32_t> far_nodes;
  std::vector<uint8_t> far_levels;
  std::vector<size_t> far_offsets;
  double mac_max = 0.0;  // largest far-entry r_K seen at construction

  std::span<const int32_t> near_of(size_t leaf_pos) const {
    return {neighbors.data() + neighbor_offsets[leaf_pos],
            neighbor_offsets[leaf_pos + 1] - neighbor_offsets[leaf_pos]};
  }
  std::span<const int32_t> far_of(size_t leaf_pos) const {
    return {far_nodes.data() + far_offsets[leaf_pos],
            far_offsets[leaf_pos + 1] - far_offsets[leaf_pos]};
  }
  std::span<const uint8_t> far_levels_of(size_t leaf_pos) const {
    return {far_levels.data() + far_offsets[leaf_pos],
            far_offsets[leaf_pos + 1] - far_offsets[leaf_pos]};
  }
};

/// Upward traversal per leaf. All base-mesh elements interact at level 0;
/// below that, far level j = children of the level-(j-1) ancestor's
/// neighbors that do not share a vertex with the level-j ancestor, and the
/// surviving leaf-level neighbors plus demotions form the near set.
/// Throws std::runtime_error naming the leaf if the near/far sets fail to
/// tile the domain (verify_coverage).
InteractionLists build_interaction_lists(const HierarchyTree& tree,
                                         const InteractionOptions& options = {},
                                         int threads = 1);

/// Vertex-sharing leaf neighbors (leaf positions, sorted, self included),
/// computed from vertex incidence independently of the tree traversal.
std::vector<std::vector<int32_t>> leaf_neighbors(const HierarchyTree& tree);

/// Text dump (leaf id -> neighbor ids; level -> far node ids) for golden
/// tests and debugging.
std::string dump_lists(const HierarchyTree& tree,
                       const InteractionLists& lists);

}  // namespace ttc
