#include "ttc/problem.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ttc {

ProblemSpec gaussian_problem() {
  constexpr double pi = std::numbers::pi;
  ProblemSpec spec;
  spec.name = "gaussian";
  spec.lo = {-2.0, -2.0, -2.0};
  spec.hi = {2.0, 2.0, 2.0};
  spec.exact = [](const Point3& x) {
    return 2.0 * std::exp(-pi * (x.x * x.x + 2.0 * x.y * x.y +
                                 3.0 * x.z * x.z));
  };
  spec.source = [exact = spec.exact](const Point3& x) {
    const double quad = 4.0 * pi * pi * x.x * x.x +
                        16.0 * pi * pi * x.y * x.y +
                        36.0 * pi * pi * x.z * x.z - 12.0 * pi;
    return -quad * exact(x);
  };
  spec.f_bound = 24.0 * pi;
  return spec;
}

ProblemSpec problem_from_file(const std::string& path, const Point3& lo,
                              const Point3& hi) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("problem_from_file: cannot open " + path);

  struct Term {
    double amplitude, a1, a2, a3;
  };
  std::vector<Term> terms;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Term t{};
    if (!(fields >> t.amplitude >> t.a1 >> t.a2 >> t.a3)) {
      std::ostringstream msg;
      msg << "problem_from_file: bad line " << line_no << " in " << path;
      throw std::runtime_error(msg.str());
    }
    terms.push_back(t);
  }
  if (terms.empty())
    throw std::runtime_error("problem_from_file: no source terms in " + path);

  ProblemSpec spec;
  spec.name = "file:" + path;
  spec.lo = lo;
  spec.hi = hi;
  spec.source = [terms](const Point3& x) {
    constexpr double pi = std::numbers::pi;
    double sum = 0.0;
    for (const auto& t : terms)
      sum += t.amplitude * std::exp(-pi * (t.a1 * x.x * x.x +
                                           t.a2 * x.y * x.y +
                                           t.a3 * x.z * x.z));
    return sum;
  };
  return spec;
}

}  // namespace ttc
