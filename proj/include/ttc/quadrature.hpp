#pragma once

#include <functional>
#include <vector>

#include "ttc/hierarchy.hpp"

namespace ttc {

/// Symmetric quadrature rule on the reference tetrahedron, in barycentric
/// coordinates. Weights sum to 1; effective weight on a physical element is
/// weight * |element volume|.
struct QuadratureRule {
  std::vector<std::array<double, 4>> points;
  std::vector<double> weights;

  size_t size() const { return points.size(); }
};

/// The 24-point degree-6 Keast rule. None of its points is the barycenter,
/// so kernels centered at the barycenter stay finite.
const QuadratureRule& degree6_rule();

/// Quadrature data for one element: physical points, effective weights, and
/// cached source values at the points.
struct ElementQuadrature {
  std::vector<Point3> points;
  std::vector<double> weights;   // sum equals element volume
  std::vector<double> f_values;  // empty until cached
};

ElementQuadrature map_to_element(const QuadratureRule& rule,
                                 const std::array<Point3, 4>& corners,
                                 double volume);

double integrate(const std::function<double(const Point3&)>& f,
                 const std::array<Point3, 4>& corners, double volume);

/// Per-leaf quadrature cache for a hierarchy tree, stored flat: leaf i owns
/// points [i*rule_size, (i+1)*rule_size).
struct LeafQuadrature {
  size_t rule_size = 0;
  std::vector<Point3> points;
  std::vector<double> weights;
  std::vector<double> f_values;

  size_t offset(size_t leaf_pos) const { return leaf_pos * rule_size; }
};

LeafQuadrature cache_leaf_quadrature(
    const HierarchyTree& tree, const std::function<double(const Point3&)>& f,
    int threads = 1);

}  // namespace ttc
