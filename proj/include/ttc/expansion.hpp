#pragma once

#include <span>
#include <vector>

#include "ttc/multi_index.hpp"
#include "ttc/quadrature.hpp"

namespace ttc {

/// Taylor coefficients a^k of the kernel 1/(4 pi |x - y|) in the source
/// variable about y = center, for all orders <= max_order.
struct CoeffTable {
  Point3 target{};
  Point3 center{};
  int max_order = 0;
  std::vector<double> values;  // canonical ordering
};

/// Fills `out` (resized to table_size(p)) with the coefficients via the
/// level-by-level recurrence. Throws std::domain_error if target == center.
void taylor_coeffs_into(const Point3& target, const Point3& center, int p,
                        std::vector<double>& out);

CoeffTable taylor_coeffs(const Point3& target, const Point3& center, int p);

/// Source moments of every tree node about its own barycenter, all orders
/// <= max_order, stored flat with stride table_size(max_order).
struct MomentTable {
  int max_order = 0;
  size_t stride = 0;
  std::vector<double> values;

  std::span<const double> node_moments(int32_t node_id) const {
    return {values.data() + size_t(node_id) * stride, stride};
  }
};

/// Accumulates every leaf quadrature point (y_l - y_c)^k f(y_l) w_l into the
/// tables of the owning leaf and all its ancestors.
MomentTable compute_moments(const HierarchyTree& tree,
                            const LeafQuadrature& quad, int p_max,
                            int threads = 1);

/// Truncated far-field contribution: sum over ||k|| <= p of a^k m^k.
double far_field_eval(std::span<const double> coeffs,
                      std::span<const double> moments, int p);

/// Gegenbauer polynomial C_k^{1/2} (the Legendre polynomial of degree k).
double gegenbauer(int k, double y);

/// Order-k slice of the Cartesian expansion of 1/|x - y| about center:
/// sum over ||k|| = k of T^k(x, center) (y - center)^k. Requires
/// |y - center| < |x - center|.
double cartesian_term_sum(const Point3& x, const Point3& y,
                          const Point3& center, int k);

}  // namespace ttc
