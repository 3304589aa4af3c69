#include "ttc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "ttc/parallel.hpp"

namespace ttc {

namespace {

void push_s31(QuadratureRule& rule, double a, double w) {
  const double d = 1.0 - 3.0 * a;
  rule.points.push_back({d, a, a, a});
  rule.points.push_back({a, d, a, a});
  rule.points.push_back({a, a, d, a});
  rule.points.push_back({a, a, a, d});
  rule.weights.insert(rule.weights.end(), 4, w);
}

void push_s211(QuadratureRule& rule, double a, double b, double w) {
  const double c = 1.0 - 2.0 * a - b;
  const double v[4] = {a, a, b, c};
  // the 12 distinct permutations of (a, a, b, c)
  static const int perms[12][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 3, 1, 2},
      {0, 2, 3, 1}, {0, 3, 2, 1}, {2, 0, 1, 3}, {3, 0, 1, 2},
      {2, 0, 3, 1}, {3, 0, 2, 1}, {2, 3, 0, 1}, {3, 2, 0, 1}};
  for (const auto& p : perms)
    rule.points.push_back({v[p[0]], v[p[1]], v[p[2]], v[p[3]]});
  rule.weights.insert(rule.weights.end(), 12, w);
}

QuadratureRule build_degree6() {
  QuadratureRule rule;
  rule.points.reserve(24);
  rule.weights.reserve(24);
  push_s31(rule, 0.214602871259152029288839219386,
           0.0399227502581674920996906275575);
  push_s31(rule, 0.0406739585346113531155794489564,
           0.0100772110553206429480132374459);
  push_s31(rule, 0.322337890142275510343994470762,
           0.0553571815436547220951532778537);
  push_s211(rule, 0.0636610018750175252992355276057,
            0.269672331458315808034097805728, 27.0 / 560.0);
  return rule;
}

}  // namespace

const QuadratureRule& degree6_rule() {
  static const QuadratureRule rule = build_degree6();
  return rule;
}

ElementQuadrature map_to_element(const QuadratureRule& rule,
                                 const std::array<Point3, 4>& corners,
                                 double volume) {
  ElementQuadrature quad;
  quad.points.reserve(rule.size());
  quad.weights.reserve(rule.size());
  for (size_t l = 0; l < rule.size(); ++l) {
    const auto& lam = rule.points[l];
    Point3 p{};
    for (int i = 0; i < 4; ++i) p = p + corners[i] * lam[i];
    quad.points.push_back(p);
    quad.weights.push_back(rule.weights[l] * volume);
  }
  return quad;
}

double integrate(const std::function<double(const Point3&)>& f,
                 const std::array<Point3, 4>& corners, double volume) {
  const auto quad = map_to_element(degree6_rule(), corners, volume);
  double sum = 0.0;
  for (size_t l = 0; l < quad.points.size(); ++l) {
    const double v = f(quad.points[l]);
    if (!std::isfinite(v))
      throw std::domain_error("integrate: non-finite integrand value");
    sum += quad.weights[l] * v;
  }
  return sum;
}

LeafQuadrature cache_leaf_quadrature(
    const HierarchyTree& tree, const std::function<double(const Point3&)>& f,
    int threads) {
  const QuadratureRule& rule = degree6_rule();
  LeafQuadrature cache;
  cache.rule_size = rule.size();
  const size_t total = tree.leaves.size() * rule.size();
  cache.points.resize(total);
  cache.weights.resize(total);
  cache.f_values.resize(total);
  parallel_for(int64_t(tree.leaves.size()), threads,
               [&](int64_t begin, int64_t end) {
                 for (int64_t i = begin; i < end; ++i) {
                   const TreeNode& node = tree.nodes[tree.leaves[i]];
                   const auto quad =
                       map_to_element(rule, tree.corners(tree.leaves[i]),
                                      node.volume);
                   const size_t off = cache.offset(size_t(i));
                   for (size_t l = 0; l < rule.size(); ++l) {
                     cache.points[off + l] = quad.points[l];
                     cache.weights[off + l] = quad.weights[l];
                     cache.f_values[off + l] = f(quad.points[l]);
                   }
                 }
               });
  return cache;
}

}  // namespace ttc
