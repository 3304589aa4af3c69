#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ttc/bench.hpp"

namespace {

using namespace ttc;

struct DomainOption {
  std::string text;  // "lo..hi", scalars or comma triples
  bool given = false;
};

std::array<double, 3> parse_triple(const std::string& text) {
  std::array<double, 3> out{};
  std::istringstream in(text);
  std::string part;
  std::vector<double> values;
  while (std::getline(in, part, ',')) values.push_back(std::stod(part));
  if (values.size() == 1) return {values[0], values[0], values[0]};
  if (values.size() == 3) {
    std::copy(values.begin(), values.end(), out.begin());
    return out;
  }
  throw CLI::ValidationError("--domain", "expected scalar or x,y,z");
}

void apply_domain(const DomainOption& opt, ProblemSpec& problem) {
  if (!opt.given) return;
  const auto sep = opt.text.find("..");
  if (sep == std::string::npos)
    throw CLI::ValidationError("--domain", "expected lo..hi");
  const auto lo = parse_triple(opt.text.substr(0, sep));
  const auto hi = parse_triple(opt.text.substr(sep + 2));
  problem.lo = {lo[0], lo[1], lo[2]};
  problem.hi = {hi[0], hi[1], hi[2]};
}

SolveMode parse_mode(const std::string& name) {
  if (name == "direct") return SolveMode::direct;
  if (name == "tc1") return SolveMode::treecode1;
  if (name == "tc2") return SolveMode::treecode2;
  throw CLI::ValidationError("--mode", "expected direct, tc1, or tc2");
}

CubeSplit parse_split(int split) {
  if (split == 6) return CubeSplit::kuhn6;
  if (split == 24) return CubeSplit::centers24;
  throw CLI::ValidationError("--split", "expected 6 or 24");
}

struct ProblemOptions {
  std::string problem = "gaussian";
  std::string problem_file;
  DomainOption domain;
};

ProblemSpec make_problem(const ProblemOptions& opt) {
  if (opt.problem == "gaussian") {
    ProblemSpec spec = gaussian_problem();
    apply_domain(opt.domain, spec);
    return spec;
  }
  if (opt.problem == "file") {
    if (opt.problem_file.empty())
      throw CLI::ValidationError("--problem-file",
                                 "required with --problem file");
    ProblemSpec spec = problem_from_file(opt.problem_file, {-2, -2, -2},
                                         {2, 2, 2});
    apply_domain(opt.domain, spec);
    return spec;
  }
  throw CLI::ValidationError("--problem", "expected gaussian or file");
}

void add_problem_options(CLI::App* cmd, ProblemOptions& opt) {
  cmd->add_option("--problem", opt.problem, "Problem: gaussian or file");
  cmd->add_option("--problem-file", opt.problem_file,
                  "Source term file for --problem file");
  cmd->add_option("--domain", opt.domain.text,
                  "Domain box lo..hi (scalars or x,y,z triples)")
      ->each([&opt](const std::string&) { opt.domain.given = true; });
}

void print_reports(const std::vector<RunReport>& reports,
                   const std::string& out_path) {
  std::cout << csv_header() << '\n';
  for (const auto& report : reports) std::cout << csv_row(report) << '\n';
  if (!out_path.empty()) emit_csv(reports, out_path);
}

int run_solve_or_sweep(const ProblemOptions& problem_opt,
                       ExperimentGrid&& grid,
                       const std::vector<std::string>& mode_names,
                       const std::string& out_path) {
  grid.problem = make_problem(problem_opt);
  grid.modes.clear();
  for (const auto& name : mode_names) grid.modes.push_back(parse_mode(name));
  const auto reports = run_experiment(grid);
  print_reports(reports, out_path);
  return 0;
}

int run_calibrate(const ProblemOptions& problem_opt, int cells, int split,
                  int refine, int max_order, int repetitions,
                  const std::string& out_path) {
  ProblemSpec problem = make_problem(problem_opt);
  const TetMesh base =
      build_box_mesh(problem.lo, problem.hi, cells, parse_split(split));
  HierarchyTree tree = make_tree(base);
  refine_uniform(tree, refine);
  const LeafQuadrature quad = cache_leaf_quadrature(tree, problem.source);

  // representative pair: the first leaf vs the leaf farthest from it
  const int32_t target_leaf = tree.leaves.front();
  const Point3 target = tree.nodes[target_leaf].barycenter;
  size_t source_pos = 0;
  double best = -1.0;
  for (size_t i = 0; i < tree.leaves.size(); ++i) {
    const double d =
        distance(target, tree.nodes[tree.leaves[i]].barycenter);
    if (d > best) {
      best = d;
      source_pos = i;
    }
  }
  const int32_t source_leaf = tree.leaves[source_pos];
  const MomentTable moments = compute_moments(tree, quad, max_order);

  std::vector<int> orders(size_t(max_order), 0);
  for (int p = 1; p <= max_order; ++p) orders[size_t(p) - 1] = p;
  const size_t off = quad.offset(source_pos);
  const CalibrationResult result = calibrate_pmax(
      target,
      {quad.points.data() + off, quad.rule_size},
      {quad.weights.data() + off, quad.rule_size}, problem.source,
      tree.nodes[source_leaf].barycenter, moments.node_moments(source_leaf),
      orders, repetitions);

  std::ostringstream table;
  table.precision(6);
  table << "p,expansion_s,direct_s\n";
  for (const auto& point : result.table)
    table << point.p << ',' << point.expansion_seconds << ','
          << result.direct_seconds << '\n';
  std::cout << table.str();
  std::cout << "crossover_p," << result.crossover_p << '\n';
  if (!result.crossed)
    std::cerr << "warning: expansion never exceeded direct cost; "
                 "reporting the largest tested order\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << table.str() << "crossover_p," << result.crossover_p << '\n';
  }
  return 0;
}

int run_mesh_info(const ProblemOptions& problem_opt, int cells, int split,
                  int refine, const std::string& save_path,
                  const std::string& load_path) {
  HierarchyTree tree = [&] {
    if (!load_path.empty()) return make_tree(load_mesh(load_path));
    ProblemSpec problem = make_problem(problem_opt);
    return make_tree(
        build_box_mesh(problem.lo, problem.hi, cells, parse_split(split)));
  }();
  const size_t base_elements = tree.roots.size();
  refine_uniform(tree, refine);

  double leaf_volume = 0.0, worst_ratio = 0.0;
  for (int32_t leaf : tree.leaves) {
    const TreeNode& node = tree.nodes[leaf];
    leaf_volume += node.volume;
    worst_ratio =
        std::max(worst_ratio, node.max_radius / std::cbrt(node.volume));
  }
  std::cout << "vertices " << tree.vertices.size() << '\n'
            << "base_elements " << base_elements << '\n'
            << "leaves " << tree.leaves.size() << '\n'
            << "depth " << tree.depth << '\n'
            << "domain_volume " << tree.domain_volume << '\n'
            << "leaf_volume_sum " << leaf_volume << '\n'
            << "max_shape_ratio " << worst_ratio << '\n';
  if (!save_path.empty()) {
    TetMesh mesh;
    mesh.vertices = tree.vertices;
    for (int32_t leaf : tree.leaves) {
      const auto& v = tree.nodes[leaf].v;
      mesh.tets.push_back(Tetrahedron{{v[0], v[1], v[2], v[3]}});
    }
    save_mesh(mesh, save_path);
    std::cout << "saved " << save_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adaptive treecode evaluator for the free-space Poisson "
               "fundamental solution on tetrahedral meshes"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one configuration");
  ProblemOptions solve_problem;
  add_problem_options(solve, solve_problem);
  int solve_cells = 1, solve_split = 24, solve_refine = 2;
  std::string solve_mode = "tc1", solve_out;
  double solve_epsilon = 1e-1;
  int solve_pmax = 10, solve_uniform = -1, solve_threads = 1;
  int64_t solve_cap = 20000;
  solve->add_option("--cells", solve_cells, "Cube cells per axis");
  solve->add_option("--split", solve_split, "Tets per cube: 6 or 24");
  solve->add_option("--refine", solve_refine, "Uniform refinement passes");
  solve->add_option("--mode", solve_mode, "direct, tc1, or tc2");
  solve->add_option("--epsilon", solve_epsilon, "Error tolerance");
  solve->add_option("--p-max", solve_pmax, "Maximum expansion order");
  solve->add_option("--uniform-p", solve_uniform,
                    "Fixed expansion order (disables adaptivity)");
  solve->add_option("--threads", solve_threads,
                    "Worker threads (1 = reproducible timing)");
  solve->add_option("--direct-cap", solve_cap,
                    "Largest N for the O(N^2) reference");
  solve->add_option("--out", solve_out, "CSV output path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a configuration grid");
  ProblemOptions sweep_problem;
  add_problem_options(sweep, sweep_problem);
  int sweep_cells = 1, sweep_split = 24, sweep_threads = 1;
  std::vector<int> sweep_refine = {2};
  std::vector<std::string> sweep_modes = {"tc1"};
  std::vector<double> sweep_epsilons = {1e-1};
  std::vector<int> sweep_pmax = {10}, sweep_uniform = {-1};
  int64_t sweep_cap = 20000;
  std::string sweep_out;
  sweep->add_option("--cells", sweep_cells, "Cube cells per axis");
  sweep->add_option("--split", sweep_split, "Tets per cube: 6 or 24");
  sweep->add_option("--refine", sweep_refine, "Refinement passes")
      ->delimiter(',');
  sweep->add_option("--mode", sweep_modes, "Modes")->delimiter(',');
  sweep->add_option("--epsilon", sweep_epsilons, "Tolerances")
      ->delimiter(',');
  sweep->add_option("--p-max", sweep_pmax, "Maximum orders")->delimiter(',');
  sweep->add_option("--uniform-p", sweep_uniform,
                    "Fixed orders; -1 keeps adaptivity")
      ->delimiter(',');
  sweep->add_option("--threads", sweep_threads, "Worker threads");
  sweep->add_option("--direct-cap", sweep_cap,
                    "Largest N for the O(N^2) reference");
  sweep->add_option("--out", sweep_out, "CSV output path");

  // calibrate
  auto* calibrate =
      app.add_subcommand("calibrate", "Find the order where expansion cost "
                                      "crosses direct summation");
  ProblemOptions cal_problem;
  add_problem_options(calibrate, cal_problem);
  int cal_cells = 1, cal_split = 24, cal_refine = 1, cal_max_order = 40,
      cal_reps = 3;
  std::string cal_out;
  calibrate->add_option("--cells", cal_cells, "Cube cells per axis");
  calibrate->add_option("--split", cal_split, "Tets per cube: 6 or 24");
  calibrate->add_option("--refine", cal_refine, "Refinement passes");
  calibrate->add_option("--max-order", cal_max_order, "Largest order tested");
  calibrate->add_option("--reps", cal_reps, "Timing repetitions (median)");
  calibrate->add_option("--out", cal_out, "CSV output path");

  // mesh-info
  auto* mesh_info = app.add_subcommand("mesh-info", "Mesh and tree summary");
  ProblemOptions mesh_problem;
  add_problem_options(mesh_info, mesh_problem);
  int mesh_cells = 1, mesh_split = 24, mesh_refine = 0;
  std::string mesh_save, mesh_load;
  mesh_info->add_option("--cells", mesh_cells, "Cube cells per axis");
  mesh_info->add_option("--split", mesh_split, "Tets per cube: 6 or 24");
  mesh_info->add_option("--refine", mesh_refine, "Refinement passes");
  mesh_info->add_option("--save-mesh", mesh_save, "Write leaf mesh to file");
  mesh_info->add_option("--load-mesh", mesh_load,
                        "Read base mesh from file instead of building");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      ExperimentGrid grid;
      grid.cells = solve_cells;
      grid.split = parse_split(solve_split);
      grid.refine_levels = {solve_refine};
      grid.epsilons = {solve_epsilon};
      grid.p_maxes = {solve_pmax};
      grid.uniform_ps = {solve_uniform};
      grid.threads = solve_threads;
      grid.direct_cap = solve_cap;
      return run_solve_or_sweep(solve_problem, std::move(grid), {solve_mode},
                                solve_out);
    }
    if (sweep->parsed()) {
      ExperimentGrid grid;
      grid.cells = sweep_cells;
      grid.split = parse_split(sweep_split);
      grid.refine_levels = sweep_refine;
      grid.epsilons = sweep_epsilons;
      grid.p_maxes = sweep_pmax;
      grid.uniform_ps = sweep_uniform;
      grid.threads = sweep_threads;
      grid.direct_cap = sweep_cap;
      return run_solve_or_sweep(sweep_problem, std::move(grid), sweep_modes,
                                sweep_out);
    }
    if (calibrate->parsed())
      return run_calibrate(cal_problem, cal_cells, cal_split, cal_refine,
                           cal_max_order, cal_reps, cal_out);
    if (mesh_info->parsed())
      return run_mesh_info(mesh_problem, mesh_cells, mesh_split, mesh_refine,
                           mesh_save, mesh_load);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
