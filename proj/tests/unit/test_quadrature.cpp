#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "oracles.hpp"
#include "ttc/quadrature.hpp"

using namespace ttc;

namespace {

std::array<Point3, 4> random_tet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    std::array<Point3, 4> c;
    for (auto& p : c) p = {unit(rng), unit(rng), unit(rng)};
    if (std::abs(signed_volume(c[0], c[1], c[2], c[3])) > 0.05) return c;
  }
}

double tet_volume(const std::array<Point3, 4>& c) {
  return std::abs(signed_volume(c[0], c[1], c[2], c[3]));
}

}  // namespace

TEST_CASE("degree6 rule: structure") {
  const QuadratureRule& rule = degree6_rule();
  CHECK(rule.size() == 24);
  double sum = 0.0;
  for (double w : rule.weights) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& p : rule.points) {
    CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-14));
    const bool is_center = std::abs(p[0] - 0.25) < 1e-9 &&
                           std::abs(p[1] - 0.25) < 1e-9 &&
                           std::abs(p[2] - 0.25) < 1e-9;
    CHECK_FALSE(is_center);
  }
}

TEST_CASE("degree6 rule: monomial exactness on the reference tet") {
  const QuadratureRule& rule = degree6_rule();
  const std::array<Point3, 4> ref = {
      Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}};
  const ElementQuadrature quad = map_to_element(rule, ref, 1.0 / 6.0);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b + a <= 6; ++b)
      for (int c = 0; c + b + a <= 6; ++c) {
        double value = 0.0;
        for (size_t l = 0; l < quad.points.size(); ++l)
          value += quad.weights[l] * std::pow(quad.points[l].x, a) *
                   std::pow(quad.points[l].y, b) *
                   std::pow(quad.points[l].z, c);
        // exact integral on the reference tet x^a y^b z^c = a!b!c!/(a+b+c+3)!
        const double exact =
            oracles::barycentric_monomial_integral({0, a, b, c}, 1.0 / 6.0);
        CHECK(value == doctest::Approx(exact).epsilon(1e-13));
      }

  // spot values named in the interface contract
  double one = 0.0, x1 = 0.0;
  for (size_t l = 0; l < quad.points.size(); ++l) {
    one += quad.weights[l];
    x1 += quad.weights[l] * quad.points[l].x;
  }
  CHECK(one == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(x1 == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("degree6 rule: exactness on random physical tets") {
  std::mt19937_64 rng(2024);
  const QuadratureRule& rule = degree6_rule();
  for (int trial = 0; trial < 100; ++trial) {
    const auto corners = random_tet(rng);
    const double volume = tet_volume(corners);
    const ElementQuadrature quad = map_to_element(rule, corners, volume);
    // barycentric monomials of total degree 6
    const std::array<int, 4> exps = {1, 2, 0, 3};
    double value = 0.0;
    for (size_t l = 0; l < quad.points.size(); ++l) {
      const auto lam = oracles::barycentric_coords(corners, quad.points[l]);
      value += quad.weights[l] * lam[0] * lam[1] * lam[1] * lam[3] * lam[3] *
               lam[3];
    }
    CHECK(value == doctest::Approx(oracles::barycentric_monomial_integral(
                       exps, volume))
                       .epsilon(1e-12));
  }
}

TEST_CASE("map_to_element: weight sums and polynomial integrals") {
  std::mt19937_64 rng(7);
  const auto corners = random_tet(rng);
  const double volume = tet_volume(corners);
  const ElementQuadrature quad =
      map_to_element(degree6_rule(), corners, volume);

  double sum = 0.0;
  for (double w : quad.weights) sum += w;
  CHECK(sum == doctest::Approx(volume).epsilon(1e-13));

  const double linear = integrate(
      [](const Point3& p) { return 2.0 * p.x - 3.0 * p.y + p.z + 0.5; },
      corners, volume);
  const Point3 c = barycenter(corners);
  CHECK(linear == doctest::Approx(
                      volume * (2.0 * c.x - 3.0 * c.y + c.z + 0.5))
                      .epsilon(1e-13));

  // f = x^2 y^2 z^2 against the barycentric expansion on a concrete tet
  const std::array<Point3, 4> concrete = {
      Point3{0, 0, 0}, Point3{2, 0, 0}, Point3{0, 3, 0}, Point3{0, 0, 1}};
  const double cv = tet_volume(concrete);
  const double by_rule = integrate(
      [](const Point3& p) { return p.x * p.x * p.y * p.y * p.z * p.z; },
      concrete, cv);
  // x = 2 lam1, y = 3 lam2, z = lam3 on this tet
  const double exact =
      4.0 * 9.0 *
      oracles::barycentric_monomial_integral({0, 2, 2, 2}, cv);
  CHECK(by_rule == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("integrate: rejects non-finite values") {
  const std::array<Point3, 4> ref = {
      Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}};
  CHECK_THROWS_AS(
      integrate([](const Point3&) { return std::nan(""); }, ref, 1.0 / 6.0),
      std::domain_error);
}

TEST_CASE("quadrature avoids the barycenter on every leaf") {
  HierarchyTree tree =
      make_tree(build_box_mesh({-2, -2, -2}, {2, 2, 2}, 1,
                               CubeSplit::centers24));
  refine_uniform(tree, 1);
  const LeafQuadrature cache =
      cache_leaf_quadrature(tree, [](const Point3&) { return 1.0; });
  for (size_t i = 0; i < tree.leaves.size(); ++i) {
    const TreeNode& node = tree.nodes[tree.leaves[i]];
    double closest = std::numeric_limits<double>::max();
    for (size_t l = 0; l < cache.rule_size; ++l)
      closest = std::min(closest, distance(cache.points[cache.offset(i) + l],
                                           node.barycenter));
    CHECK(closest > 1e-6 * node.max_radius);
  }
}

TEST_CASE("affine invariance of the mapped rule") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto corners = random_tet(rng);
    const double volume = tet_volume(corners);
    // A: scale + shear + translation
    auto apply = [](const Point3& p) {
      return Point3{2.0 * p.x + 0.3 * p.y + 1.0, 1.5 * p.y - 0.2 * p.z,
                    0.7 * p.z + 0.1 * p.x - 2.0};
    };
    std::array<Point3, 4> mapped;
    for (int i = 0; i < 4; ++i) mapped[size_t(i)] = apply(corners[size_t(i)]);
    const double mapped_volume = tet_volume(mapped);

    auto f = [](const Point3& p) {
      return std::sin(p.x) + p.y * p.y - 0.5 * p.z;
    };
    const double direct = integrate(f, mapped, mapped_volume);
    const double det = mapped_volume / volume;
    const double pulled_back = integrate(
                                   [&](const Point3& p) { return f(apply(p)); },
                                   corners, volume) *
                               det;
    CHECK(pulled_back == doctest::Approx(direct).epsilon(1e-12));
  }
}
