#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ttc/problem.hpp"
#include "ttc/solver.hpp"

namespace ttc {

/// Metrics and settings of one solver run, one CSV row.
struct RunReport {
  int64_t n_elements = 0;
  std::string mode;
  double epsilon = 0.0;
  int p_max = -1;
  int uniform_p = -1;
  double e1 = std::numeric_limits<double>::quiet_NaN();
  double e2 = std::numeric_limits<double>::quiet_NaN();
  double e_dt = std::numeric_limits<double>::quiet_NaN();
  double prep_seconds = 0.0;
  double eval_seconds = 0.0;
  double mac_max = 0.0;
  int64_t clamped_count = 0;
  int64_t direct_fallback_count = 0;
  std::vector<int64_t> order_histogram;
};

/// Piecewise-constant L2 distance between two per-leaf value sets:
/// sqrt(sum |a_i - b_i|^2 vol_i).
double discrete_l2(std::span<const double> a, std::span<const double> b,
                   const HierarchyTree& tree);

/// Domain-truncation diagnostic: max |exact| sampled on a uniform odd grid
/// over each boundary face (face centers included).
double truncation_error(const ProblemSpec& problem, int samples_per_side = 41);

struct ExperimentGrid {
  ProblemSpec problem;
  int cells = 1;
  CubeSplit split = CubeSplit::centers24;
  std::vector<int> refine_levels = {2};
  std::vector<SolveMode> modes = {SolveMode::treecode1};
  std::vector<double> epsilons = {1e-1};
  std::vector<int> p_maxes = {10};
  std::vector<int> uniform_ps = {-1};  // -1 keeps adaptive order selection
  int threads = 1;
  int64_t direct_cap = 20000;  // skip the O(N^2) reference above this N
};

/// Runs the cross product of the grid axes; one report per run. The direct
/// reference is computed once per mesh and reused for every E2.
std::vector<RunReport> run_experiment(const ExperimentGrid& grid);

std::string csv_header();
std::string csv_row(const RunReport& report);
void emit_csv(const std::vector<RunReport>& reports, const std::string& path);

const char* mode_name(SolveMode mode);

}  // namespace ttc
