#pragma once

#include <functional>
#include <optional>
#include <span>

#include "ttc/expansion.hpp"
#include "ttc/interaction.hpp"

namespace ttc {

enum class SolveMode { direct, treecode1, treecode2 };

struct SolverConfig {
  double epsilon = 1e-3;
  int p_max = 10;
  double f_bound = 1.0;  // F, sup |f| over the domain
  int uniform_p = -1;    // >= 0: fixed expansion order, adaptivity off
  int threads = 1;
  int order_cap = 200;   // absolute ceiling for the order search

  double c_const() const;  // F / (4 pi)
};

/// Potential values at the leaf barycenters plus evaluation diagnostics.
struct Solution {
  std::vector<double> values;
  // Per-target far-field error bound accumulated from the terms
  // C r_K^{p+1} |K| / (R_K (1 - r_K)) with the orders actually used.
  std::vector<double> error_bound;
  std::vector<int64_t> order_histogram;  // index p, counts expansions at p
  int64_t clamped_count = 0;         // order requests capped at p_max
  int64_t direct_fallback_count = 0; // treecode2 leaf direct summations
  double mac_max = 0.0;
  double prep_seconds = 0.0;  // filled by the caller that built the inputs
  double eval_seconds = 0.0;

  int64_t expansions_total() const;
};

/// All-pairs quadrature summation; the ground-truth oracle.
Solution direct_solve(const HierarchyTree& tree, const LeafQuadrature& quad,
                      int threads = 1);

/// Smallest order p whose error term beats epsilon / (8^s n C M), or
/// nullopt when no p <= min(p_max, order_cap) does.
std::optional<int> select_order(const MacGeometry& geom, double volume,
                                const SolverConfig& cfg, int64_t n, int M,
                                int s);

Solution treecode1_solve(const HierarchyTree& tree,
                         const InteractionLists& lists,
                         const MomentTable& moments,
                         const LeafQuadrature& quad, const SolverConfig& cfg);

Solution treecode2_solve(const HierarchyTree& tree,
                         const InteractionLists& lists,
                         const MomentTable& moments,
                         const LeafQuadrature& quad, const SolverConfig& cfg);

struct FarFieldStats {
  std::vector<int64_t> order_histogram;
  int64_t direct_fallback_count = 0;
  double error_bound = 0.0;
};

/// One far-field contribution under the treecode2 policy: expand if the
/// selected order fits, direct-sum leaves otherwise, else recurse into the
/// children with a budget tightened by 8 per step.
double treecode2_far_field(const HierarchyTree& tree,
                           const MomentTable& moments,
                           const LeafQuadrature& quad, const Point3& target,
                           int32_t node_id, const SolverConfig& cfg,
                           int64_t n, int M, int s,
                           FarFieldStats* stats = nullptr);

/// Largest cached |f| over all leaf quadrature points.
double estimate_f_bound(const LeafQuadrature& quad);

struct CalibrationPoint {
  int p = 0;
  double expansion_seconds = 0.0;
};

struct CalibrationResult {
  int crossover_p = 0;  // smallest tested p with t_p > t_direct
  bool crossed = false;
  double direct_seconds = 0.0;
  std::vector<CalibrationPoint> table;
};

/// Times the order-p expansion (coefficient build + moment contraction)
/// against the pairwise direct quadrature for one representative element
/// pair; f is evaluated live so its cost is part of the direct path.
CalibrationResult calibrate_pmax(
    const Point3& target, std::span<const Point3> source_points,
    std::span<const double> source_weights,
    const std::function<double(const Point3&)>& f, const Point3& source_center,
    std::span<const double> source_moments, std::span<const int> orders,
    int repetitions = 3);

}  // namespace ttc
