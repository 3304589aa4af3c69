#include "ttc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ttc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

double discrete_l2(std::span<const double> a, std::span<const double> b,
                   const HierarchyTree& tree) {
  if (a.size() != b.size() || a.size() != tree.leaves.size())
    throw std::invalid_argument("discrete_l2: size mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d * tree.nodes[tree.leaves[i]].volume;
  }
  return std::sqrt(sum);
}

double truncation_error(const ProblemSpec& problem, int samples_per_side) {
  if (!problem.has_exact())
    throw std::invalid_argument("truncation_error: no exact solution");
  if (samples_per_side < 2)
    throw std::invalid_argument("truncation_error: need >= 2 samples");
  const int n = samples_per_side | 1;  // odd, so face centers are sampled
  const Point3 lo = problem.lo, hi = problem.hi;
  double worst = 0.0;
  auto scan_face = [&](int fixed_axis, double fixed_value) {
    const int a = (fixed_axis + 1) % 3, b = (fixed_axis + 2) % 3;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double c[3];
        c[fixed_axis] = fixed_value;
        c[a] = lo[a] + (hi[a] - lo[a]) * i / (n - 1);
        c[b] = lo[b] + (hi[b] - lo[b]) * j / (n - 1);
        worst = std::max(worst,
                         std::abs(problem.exact({c[0], c[1], c[2]})));
      }
  };
  for (int axis = 0; axis < 3; ++axis) {
    scan_face(axis, lo[axis]);
    scan_face(axis, hi[axis]);
  }
  return worst;
}

const char* mode_name(SolveMode mode) {
  switch (mode) {
    case SolveMode::direct: return "direct";
    case SolveMode::treecode1: return "tc1";
    case SolveMode::treecode2: return "tc2";
  }
  return "?";
}

std::vector<RunReport> run_experiment(const ExperimentGrid& grid) {
  std::vector<RunReport> reports;
  const auto& problem = grid.problem;

  for (int refine : grid.refine_levels) {
    auto t0 = std::chrono::steady_clock::now();
    const TetMesh base =
        build_box_mesh(problem.lo, problem.hi, grid.cells, grid.split);
    HierarchyTree tree = make_tree(base);
    refine_uniform(tree, refine);
    const double tree_seconds = seconds_since(t0);
    const int64_t n = int64_t(tree.leaves.size());

    t0 = std::chrono::steady_clock::now();
    const LeafQuadrature quad =
        cache_leaf_quadrature(tree, problem.source, grid.threads);
    const double quad_seconds = seconds_since(t0);

    const double f_bound =
        problem.f_bound > 0.0 ? problem.f_bound : estimate_f_bound(quad);
    const double e_dt = problem.has_exact()
                            ? truncation_error(problem)
                            : std::numeric_limits<double>::quiet_NaN();

    std::vector<double> exact_values;
    if (problem.has_exact()) {
      exact_values.reserve(size_t(n));
      for (int32_t leaf : tree.leaves)
        exact_values.push_back(problem.exact(tree.nodes[leaf].barycenter));
    }

    const bool want_treecode =
        std::any_of(grid.modes.begin(), grid.modes.end(), [](SolveMode m) {
          return m != SolveMode::direct;
        });
    const bool want_direct =
        std::any_of(grid.modes.begin(), grid.modes.end(), [](SolveMode m) {
          return m == SolveMode::direct;
        });

    // shared O(N^2) reference for E2
    Solution direct;
    bool have_direct = false;
    if ((want_direct || want_treecode) && n <= grid.direct_cap) {
      direct = direct_solve(tree, quad, grid.threads);
      have_direct = true;
    } else if (want_treecode) {
      std::cerr << "warning: N = " << n << " above direct cap "
                << grid.direct_cap << ", E2 omitted\n";
    }

    InteractionLists lists;
    double lists_seconds = 0.0;
    std::map<int, std::pair<MomentTable, double>> moments_by_order;
    if (want_treecode) {
      t0 = std::chrono::steady_clock::now();
      lists = build_interaction_lists(tree, {}, grid.threads);
      lists_seconds = seconds_since(t0);
    }
    auto moments_for = [&](int order) -> const std::pair<MomentTable, double>& {
      auto it = moments_by_order.find(order);
      if (it == moments_by_order.end()) {
        const auto m0 = std::chrono::steady_clock::now();
        MomentTable table = compute_moments(tree, quad, order, grid.threads);
        const double dt = seconds_since(m0);
        it = moments_by_order
                 .emplace(order, std::make_pair(std::move(table), dt))
                 .first;
      }
      return it->second;
    };

    for (SolveMode mode : grid.modes) {
      if (mode == SolveMode::direct) {
        if (!have_direct) {
          std::cerr << "warning: direct run skipped, N = " << n
                    << " above direct cap\n";
          continue;
        }
        RunReport report;
        report.n_elements = n;
        report.mode = mode_name(mode);
        report.epsilon = std::numeric_limits<double>::quiet_NaN();
        report.prep_seconds = tree_seconds + quad_seconds;
        report.eval_seconds = direct.eval_seconds;
        report.e2 = 0.0;
        report.e_dt = e_dt;
        if (problem.has_exact())
          report.e1 = discrete_l2(direct.values, exact_values, tree);
        reports.push_back(std::move(report));
        continue;
      }
      for (double epsilon : grid.epsilons)
        for (int p_max : grid.p_maxes)
          for (int uniform_p : grid.uniform_ps) {
            if (mode == SolveMode::treecode2 && uniform_p >= 0) continue;
            SolverConfig cfg;
            cfg.epsilon = epsilon;
            cfg.p_max = p_max;
            cfg.uniform_p = uniform_p;
            cfg.f_bound = f_bound;
            cfg.threads = grid.threads;
            const int order_needed = std::max(p_max, uniform_p);
            const auto& [moments, moments_seconds] =
                moments_for(order_needed);
            const Solution sol =
                mode == SolveMode::treecode1
                    ? treecode1_solve(tree, lists, moments, quad, cfg)
                    : treecode2_solve(tree, lists, moments, quad, cfg);

            RunReport report;
            report.n_elements = n;
            report.mode = mode_name(mode);
            report.epsilon = epsilon;
            report.p_max = p_max;
            report.uniform_p = uniform_p;
            report.prep_seconds =
                tree_seconds + quad_seconds + lists_seconds + moments_seconds;
            report.eval_seconds = sol.eval_seconds;
            report.mac_max = sol.mac_max;
            report.clamped_count = sol.clamped_count;
            report.direct_fallback_count = sol.direct_fallback_count;
            report.order_histogram = sol.order_histogram;
            report.e_dt = e_dt;
            if (have_direct)
              report.e2 = discrete_l2(sol.values, direct.values, tree);
            if (problem.has_exact())
              report.e1 = discrete_l2(sol.values, exact_values, tree);
            reports.push_back(std::move(report));
          }
    }
  }
  return reports;
}

std::string csv_header() {
  return "N,mode,epsilon,p_max,uniform_p,E1,E2,E_DT,prep_s,eval_s,mac_max,"
         "clamped_count";
}

std::string csv_row(const RunReport& r) {
  std::ostringstream row;
  row.precision(17);
  row << r.n_elements << ',' << r.mode << ',' << r.epsilon << ',' << r.p_max
      << ',' << r.uniform_p << ',' << r.e1 << ',' << r.e2 << ',' << r.e_dt
      << ',' << r.prep_seconds << ',' << r.eval_seconds << ',' << r.mac_max
      << ',' << r.clamped_count;
  return row.str();
}

void emit_csv(const std::vector<RunReport>& reports, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot write " + path);
  out << csv_header() << '\n';
  for (const auto& report : reports) out << csv_row(report) << '\n';
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace ttc
