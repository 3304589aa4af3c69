#include "ttc/expansion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ttc/parallel.hpp"

namespace ttc {

namespace {
constexpr double four_pi = 4.0 * std::numbers::pi;
}

void taylor_coeffs_into(const Point3& target, const Point3& center, int p,
                        std::vector<double>& out) {
  const Point3 d = target - center;
  const double r2 = dot(d, d);
  if (r2 == 0.0)
    throw std::domain_error("taylor_coeffs: target coincides with center");
  out.resize(table_size(p));
  out[0] = 1.0 / (four_pi * std::sqrt(r2));
  if (p == 0) return;

  const IndexGraph& graph = index_graph(p);
  const double dc[3] = {d.x, d.y, d.z};
  size_t i = 1;
  for (int n = 1; n <= p; ++n) {
    const double inv = 1.0 / (n * r2);
    const double c1 = (2.0 * n - 1.0) * inv;
    const double c2 = (n - 1.0) * inv;
    const size_t block_end = table_size(n);
    for (; i < block_end; ++i) {
      double s1 = 0.0, s2 = 0.0;
      const auto& m1 = graph.minus_one[i];
      const auto& m2 = graph.minus_two[i];
      for (int ax = 0; ax < 3; ++ax) {
        if (m1[ax] >= 0) s1 += dc[ax] * out[m1[ax]];
        if (m2[ax] >= 0) s2 += out[m2[ax]];
      }
      out[i] = c1 * s1 - c2 * s2;
    }
  }
}

CoeffTable taylor_coeffs(const Point3& target, const Point3& center, int p) {
  CoeffTable table;
  table.target = target;
  table.center = center;
  table.max_order = p;
  taylor_coeffs_into(target, center, p, table.values);
  return table;
}

MomentTable compute_moments(const HierarchyTree& tree,
                            const LeafQuadrature& quad, int p_max,
                            int threads) {
  MomentTable table;
  table.max_order = p_max;
  table.stride = table_size(p_max);
  table.values.assign(tree.nodes.size() * table.stride, 0.0);

  const IndexGraph& graph = index_graph(p_max);
  const size_t stride = table.stride;

  // leaf position lookup, -1 for internal nodes
  std::vector<int32_t> leaf_pos(tree.nodes.size(), -1);
  for (size_t i = 0; i < tree.leaves.size(); ++i)
    leaf_pos[tree.leaves[i]] = int32_t(i);

  // Every node owns its own slice, so accumulating each node from its
  // descendant leaves parallelizes without shared writes.
  parallel_for(int64_t(tree.nodes.size()), threads, [&](int64_t begin,
                                                        int64_t end) {
    std::vector<double> mono(stride);
    std::vector<int32_t> stack;
    for (int64_t node_id = begin; node_id < end; ++node_id) {
      const Point3 yc = tree.nodes[node_id].barycenter;
      double* dst = table.values.data() + size_t(node_id) * stride;
      stack.assign(1, int32_t(node_id));
      while (!stack.empty()) {
        const int32_t cur = stack.back();
        stack.pop_back();
        const TreeNode& n = tree.nodes[cur];
        if (!n.is_leaf()) {
          for (int c = 0; c < 8; ++c) stack.push_back(n.first_child + c);
          continue;
        }
        const size_t off = quad.offset(size_t(leaf_pos[cur]));
        for (size_t l = 0; l < quad.rule_size; ++l) {
          const Point3 d = quad.points[off + l] - yc;
          const double fw = quad.f_values[off + l] * quad.weights[off + l];
          const double dc[3] = {d.x, d.y, d.z};
          mono[0] = 1.0;
          for (size_t i = 1; i < stride; ++i) {
            const auto& m1 = graph.minus_one[i];
            for (int ax = 0; ax < 3; ++ax) {
              if (m1[ax] >= 0) {
                mono[i] = mono[m1[ax]] * dc[ax];
                break;
              }
            }
          }
          for (size_t i = 0; i < stride; ++i) dst[i] += fw * mono[i];
        }
      }
    }
  });
  return table;
}

double far_field_eval(std::span<const double> coeffs,
                      std::span<const double> moments, int p) {
  const size_t n = table_size(p);
  if (n > coeffs.size() || n > moments.size())
    throw std::invalid_argument("far_field_eval: order exceeds table");
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) sum += coeffs[i] * moments[i];
  return sum;
}

double gegenbauer(int k, double y) {
  if (k < 0) throw std::invalid_argument("gegenbauer: negative degree");
  if (k == 0) return 1.0;
  double prev = 1.0, cur = y;
  for (int n = 2; n <= k; ++n) {
    const double next = ((2.0 * n - 1.0) * y * cur - (n - 1.0) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

double cartesian_term_sum(const Point3& x, const Point3& y,
                          const Point3& center, int k) {
  const double rho = distance(y, center);
  const double big_r = distance(x, center);
  if (!(rho < big_r))
    throw std::domain_error("cartesian_term_sum: |y - c| < |x - c| required");
  std::vector<double> coeffs;
  taylor_coeffs_into(x, center, k, coeffs);
  const Point3 d = y - center;
  double sum = 0.0;
  for (int k1 = 0; k1 <= k; ++k1)
    for (int k2 = 0; k2 <= k - k1; ++k2) {
      const int k3 = k - k1 - k2;
      const double mono = std::pow(d.x, k1) * std::pow(d.y, k2) *
                          std::pow(d.z, k3);
      sum += coeffs[table_index(k1, k2, k3)] * mono;
    }
  return four_pi * sum;
}

}  // namespace ttc
