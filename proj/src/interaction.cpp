#include "ttc/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ttc/parallel.hpp"

namespace ttc {

MacGeometry mac_geometry(const Point3& target, const TreeNode& node) {
  MacGeometry geom;
  geom.r_y = node.max_radius;
  geom.R_K = distance(target, node.barycenter);
  if (geom.R_K == 0.0)
    throw std::domain_error("mac_geometry: target coincides with barycenter");
  geom.r_K = geom.r_y / geom.R_K;
  return geom;
}

namespace {

bool share_vertex_ids(const TreeNode& a, const TreeNode& b) {
  for (int32_t va : a.v)
    for (int32_t vb : b.v)
      if (va == vb) return true;
  return false;
}

struct LeafScratch {
  std::vector<int32_t> near_ids;  // node ids of near leaves
  std::vector<int32_t> far_ids;
  std::vector<uint8_t> far_lv;
  std::vector<int32_t> level_nbr[2];  // ping-pong neighbor sets
  double mac_max = 0.0;
};

// Classify one candidate: expand-and-keep, or demote into its subtree.
void classify_far(const HierarchyTree& tree, const Point3& target,
                  int32_t node_id, double demote_ratio, LeafScratch& out) {
  const TreeNode& node = tree.nodes[node_id];
  const MacGeometry geom = mac_geometry(target, node);
  if (geom.r_K < demote_ratio) {
    out.far_ids.push_back(node_id);
    out.far_lv.push_back(uint8_t(node.level));
    out.mac_max = std::max(out.mac_max, geom.r_K);
    return;
  }
  if (node.is_leaf()) {
    out.near_ids.push_back(node_id);
    return;
  }
  for (int c = 0; c < 8; ++c)
    classify_far(tree, target, node.first_child + c, demote_ratio, out);
}

void traverse_leaf(const HierarchyTree& tree, int32_t leaf_id,
                   const std::vector<int32_t>& ancestors, double demote_ratio,
                   LeafScratch& out) {
  const Point3 target = tree.nodes[leaf_id].barycenter;
  out.near_ids.clear();
  out.far_ids.clear();
  out.far_lv.clear();
  out.mac_max = 0.0;

  // Base-mesh elements all interact at level 0; far-field classification
  // starts with the children of the root generation.
  auto& nbr = out.level_nbr[0];
  auto& next = out.level_nbr[1];
  nbr.assign(tree.roots.begin(), tree.roots.end());
  for (size_t level = 1; level < ancestors.size(); ++level) {
    next.clear();
    const TreeNode& anc = tree.nodes[ancestors[level]];
    for (int32_t coarse : nbr) {
      const int32_t first = tree.nodes[coarse].first_child;
      for (int c = 0; c < 8; ++c) {
        const int32_t cand = first + c;
        if (share_vertex_ids(tree.nodes[cand], anc))
          next.push_back(cand);
        else
          classify_far(tree, target, cand, demote_ratio, out);
      }
    }
    std::swap(nbr, next);
  }
  out.near_ids.insert(out.near_ids.end(), nbr.begin(), nbr.end());
  std::sort(out.near_ids.begin(), out.near_ids.end());
}

}  // namespace

InteractionLists build_interaction_lists(const HierarchyTree& tree,
                                         const InteractionOptions& options,
                                         int threads) {
  const size_t n_leaves = tree.leaves.size();
  std::vector<int32_t> leaf_pos(tree.nodes.size(), -1);
  for (size_t i = 0; i < n_leaves; ++i) leaf_pos[tree.leaves[i]] = int32_t(i);

  std::vector<LeafScratch> results(n_leaves);
  std::vector<double> worker_mac(size_t(std::max(threads, 1)), 0.0);

  parallel_for(int64_t(n_leaves), threads, [&](int64_t begin, int64_t end) {
    LeafScratch scratch;
    std::vector<int32_t> ancestors;
    for (int64_t i = begin; i < end; ++i) {
      const int32_t leaf_id = tree.leaves[i];
      ancestors.clear();
      for (int32_t a = leaf_id; a >= 0; a = tree.nodes[a].parent)
        ancestors.push_back(a);
      std::reverse(ancestors.begin(), ancestors.end());
      traverse_leaf(tree, leaf_id, ancestors, options.demote_ratio, scratch);
      auto& slot = results[i];
      slot.near_ids = scratch.near_ids;
      slot.far_ids = scratch.far_ids;
      slot.far_lv = scratch.far_lv;
      slot.mac_max = scratch.mac_max;
    }
  });

  InteractionLists lists;
  lists.neighbor_offsets.resize(n_leaves + 1, 0);
  lists.far_offsets.resize(n_leaves + 1, 0);
  size_t near_total = 0, far_total = 0;
  for (size_t i = 0; i < n_leaves; ++i) {
    near_total += results[i].near_ids.size();
    far_total += results[i].far_ids.size();
    lists.neighbor_offsets[i + 1] = near_total;
    lists.far_offsets[i + 1] = far_total;
    lists.mac_max = std::max(lists.mac_max, results[i].mac_max);
  }
  lists.neighbors.reserve(near_total);
  lists.far_nodes.reserve(far_total);
  lists.far_levels.reserve(far_total);
  for (size_t i = 0; i < n_leaves; ++i) {
    for (int32_t id : results[i].near_ids)
      lists.neighbors.push_back(leaf_pos[id]);
    lists.far_nodes.insert(lists.far_nodes.end(), results[i].far_ids.begin(),
                           results[i].far_ids.end());
    lists.far_levels.insert(lists.far_levels.end(), results[i].far_lv.begin(),
                            results[i].far_lv.end());
    results[i] = LeafScratch{};  // release as we go
  }

  if (options.verify_coverage) {
    const double tol = 1e-10 * tree.domain_volume;
    for (size_t i = 0; i < n_leaves; ++i) {
      double vol = 0.0;
      for (int32_t pos : lists.near_of(i))
        vol += tree.nodes[tree.leaves[pos]].volume;
      for (int32_t id : lists.far_of(i)) vol += tree.nodes[id].volume;
      if (std::abs(vol - tree.domain_volume) > tol) {
        std::ostringstream msg;
        msg << "build_interaction_lists: leaf " << tree.leaves[i]
            << " covers volume " << vol << " of " << tree.domain_volume;
        throw std::runtime_error(msg.str());
      }
    }
  }
  return lists;
}

std::vector<std::vector<int32_t>> leaf_neighbors(const HierarchyTree& tree) {
  const size_t n_leaves = tree.leaves.size();
  std::vector<std::vector<int32_t>> incident(tree.vertices.size());
  for (size_t i = 0; i < n_leaves; ++i)
    for (int32_t v : tree.nodes[tree.leaves[i]].v)
      incident[v].push_back(int32_t(i));

  std::vector<std::vector<int32_t>> result(n_leaves);
  for (size_t i = 0; i < n_leaves; ++i) {
    auto& out = result[i];
    for (int32_t v : tree.nodes[tree.leaves[i]].v)
      out.insert(out.end(), incident[v].begin(), incident[v].end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return result;
}

std::string dump_lists(const HierarchyTree& tree,
                       const InteractionLists& lists) {
  std::ostringstream out;
  for (size_t i = 0; i < tree.leaves.size(); ++i) {
    out << "leaf " << tree.leaves[i] << " near";
    for (int32_t pos : lists.near_of(i)) out << ' ' << tree.leaves[pos];
    out << '\n';
    const auto far = lists.far_of(i);
    const auto lv = lists.far_levels_of(i);
    for (int level = 0; level < tree.depth; ++level) {
      bool any = false;
      for (size_t j = 0; j < far.size(); ++j) {
        if (lv[j] != level) continue;
        if (!any) {
          out << "leaf " << tree.leaves[i] << " far level " << level << ':';
          any = true;
        }
        out << ' ' << far[j];
      }
      if (any) out << '\n';
    }
  }
  return out.str();
}

}  // namespace ttc
