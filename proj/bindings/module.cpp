#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ttc/bench.hpp"

namespace py = pybind11;
using namespace ttc;

namespace {

Point3 to_point(const std::array<double, 3>& p) { return {p[0], p[1], p[2]}; }

std::array<double, 3> from_point(const Point3& p) { return {p.x, p.y, p.z}; }

ProblemSpec named_problem(const std::string& name) {
  if (name == "gaussian") return gaussian_problem();
  throw std::invalid_argument("unknown problem: " + name);
}

py::dict solution_dict(const Solution& sol) {
  py::dict out;
  out["values"] = sol.values;
  out["error_bound"] = sol.error_bound;
  out["order_histogram"] = sol.order_histogram;
  out["clamped_count"] = sol.clamped_count;
  out["direct_fallback_count"] = sol.direct_fallback_count;
  out["mac_max"] = sol.mac_max;
  out["eval_seconds"] = sol.eval_seconds;
  return out;
}

// Bundles a tree with its cached quadrature so solver calls stay one-liners.
struct PyWorkspace {
  HierarchyTree tree;
  LeafQuadrature quad;
  ProblemSpec problem;

  PyWorkspace(const std::string& problem_name, int cells, int split,
              int refine) {
    problem = named_problem(problem_name);
    const CubeSplit cube_split =
        split == 6 ? CubeSplit::kuhn6 : CubeSplit::centers24;
    if (split != 6 && split != 24)
      throw std::invalid_argument("split must be 6 or 24");
    tree = make_tree(build_box_mesh(problem.lo, problem.hi, cells, cube_split));
    refine_uniform(tree, refine);
    quad = cache_leaf_quadrature(tree, problem.source);
  }

  size_t n_elements() const { return tree.leaves.size(); }
  int depth() const { return tree.depth; }
  double domain_volume() const { return tree.domain_volume; }

  std::vector<std::array<double, 3>> barycenters() const {
    std::vector<std::array<double, 3>> out;
    out.reserve(tree.leaves.size());
    for (int32_t leaf : tree.leaves)
      out.push_back(from_point(tree.nodes[leaf].barycenter));
    return out;
  }

  std::vector<double> exact_values() const {
    if (!problem.has_exact())
      throw std::invalid_argument("problem has no exact solution");
    std::vector<double> out;
    out.reserve(tree.leaves.size());
    for (int32_t leaf : tree.leaves)
      out.push_back(problem.exact(tree.nodes[leaf].barycenter));
    return out;
  }

  py::dict solve(const std::string& mode, double epsilon, int p_max,
                 int uniform_p, int threads) {
    if (mode == "direct") return solution_dict(direct_solve(tree, quad, threads));
    SolverConfig cfg;
    cfg.epsilon = epsilon;
    cfg.p_max = p_max;
    cfg.uniform_p = uniform_p;
    cfg.threads = threads;
    cfg.f_bound =
        problem.f_bound > 0.0 ? problem.f_bound : estimate_f_bound(quad);
    const InteractionLists lists = build_interaction_lists(tree, {}, threads);
    const MomentTable moments =
        compute_moments(tree, quad, std::max(p_max, uniform_p), threads);
    if (mode == "tc1")
      return solution_dict(treecode1_solve(tree, lists, moments, quad, cfg));
    if (mode == "tc2")
      return solution_dict(treecode2_solve(tree, lists, moments, quad, cfg));
    throw std::invalid_argument("mode must be direct, tc1, or tc2");
  }

  double l2_error(const std::vector<double>& a,
                  const std::vector<double>& b) const {
    return discrete_l2(a, b, tree);
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-adaptive treecode evaluator for the free-space Poisson "
            "fundamental solution on tetrahedral meshes";

  m.def("gegenbauer", &gegenbauer, py::arg("k"), py::arg("y"),
        "Gegenbauer polynomial C_k^{1/2}(y)");

  m.def(
      "multi_index_enumerate",
      [](int p) {
        std::vector<std::array<int, 3>> out;
        for (const auto& k : multi_index_enumerate(p))
          out.push_back({k.k1, k.k2, k.k3});
        return out;
      },
      py::arg("p"), "Multi-indices of order <= p in canonical order");

  m.def(
      "taylor_coeffs",
      [](const std::array<double, 3>& target,
         const std::array<double, 3>& center, int p) {
        return taylor_coeffs(to_point(target), to_point(center), p).values;
      },
      py::arg("target"), py::arg("center"), py::arg("p"),
      "Kernel Taylor coefficients a^k in canonical order");

  m.def(
      "degree6_rule",
      []() {
        const QuadratureRule& rule = degree6_rule();
        py::dict out;
        out["points"] = rule.points;
        out["weights"] = rule.weights;
        return out;
      },
      "The 24-point degree-6 tetrahedral quadrature rule");

  m.def(
      "cartesian_term_sum",
      [](const std::array<double, 3>& x, const std::array<double, 3>& y,
         const std::array<double, 3>& center, int k) {
        return cartesian_term_sum(to_point(x), to_point(y), to_point(center),
                                  k);
      },
      py::arg("x"), py::arg("y"), py::arg("center"), py::arg("k"),
      "Order-k slice of the Cartesian kernel expansion");

  py::class_<PyWorkspace>(m, "Workspace")
      .def(py::init<const std::string&, int, int, int>(),
           py::arg("problem") = "gaussian", py::arg("cells") = 1,
           py::arg("split") = 24, py::arg("refine") = 1)
      .def_property_readonly("n_elements", &PyWorkspace::n_elements)
      .def_property_readonly("depth", &PyWorkspace::depth)
      .def_property_readonly("domain_volume", &PyWorkspace::domain_volume)
      .def("barycenters", &PyWorkspace::barycenters)
      .def("exact_values", &PyWorkspace::exact_values)
      .def("solve", &PyWorkspace::solve, py::arg("mode") = "tc1",
           py::arg("epsilon") = 1e-1, py::arg("p_max") = 10,
           py::arg("uniform_p") = -1, py::arg("threads") = 1)
      .def("l2_error", &PyWorkspace::l2_error, py::arg("a"), py::arg("b"));
}
