#pragma once

#include <functional>
#include <string>

#include "ttc/geometry.hpp"

namespace ttc {

/// A benchmark problem: domain box, source f, optional exact solution.
struct ProblemSpec {
  std::string name;
  Point3 lo{-2.0, -2.0, -2.0};
  Point3 hi{2.0, 2.0, 2.0};
  std::function<double(const Point3&)> source;
  std::function<double(const Point3&)> exact;  // empty when unknown
  double f_bound = 0.0;  // analytic sup |f|; <= 0 means estimate at runtime

  bool has_exact() const { return bool(exact); }
};

/// The anisotropic Gaussian test problem on [-2,2]^3:
/// u = 2 exp(-pi (x1^2 + 2 x2^2 + 3 x3^2)), f = -lap u, sup |f| = 24 pi.
ProblemSpec gaussian_problem();

/// Sum-of-Gaussians source from a text file: each non-comment line reads
/// "amplitude a1 a2 a3" meaning A exp(-pi (a1 x1^2 + a2 x2^2 + a3 x3^2)).
/// No exact solution is attached.
ProblemSpec problem_from_file(const std::string& path, const Point3& lo,
                              const Point3& hi);

}  // namespace ttc
