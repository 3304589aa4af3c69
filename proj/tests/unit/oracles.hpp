// Independent numerical oracles used by the tests. Everything here avoids
// the library's own evaluation paths: derivatives come from finite
// differences, integrals from closed forms or Monte Carlo.
#pragma once

#include <quadmath.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ttc/geometry.hpp"

namespace oracles {

using quad_float = __float128;

// Fornberg weights for the m-th derivative at 0 on nodes z[0..n-1].
inline std::vector<quad_float> fornberg_weights(int m,
                                                const std::vector<quad_float>& z) {
  const int n = int(z.size());
  std::vector<std::vector<quad_float>> c(
      size_t(n), std::vector<quad_float>(size_t(m) + 1, quad_float(0)));
  quad_float c1 = 1, c4 = z[0];
  c[0][0] = 1;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    quad_float c2 = 1, c5 = c4;
    c4 = z[size_t(i)];
    for (int j = 0; j < i; ++j) {
      const quad_float c3 = z[size_t(i)] - z[size_t(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[size_t(i)][size_t(k)] =
              c1 * (k * c[size_t(i) - 1][size_t(k) - 1] -
                    c5 * c[size_t(i) - 1][size_t(k)]) /
              c2;
        c[size_t(i)][0] = -c1 * c5 * c[size_t(i) - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[size_t(j)][size_t(k)] =
            (c4 * c[size_t(j)][size_t(k)] - k * c[size_t(j)][size_t(k) - 1]) /
            c3;
      c[size_t(j)][0] = c4 * c[size_t(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<quad_float> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) w[size_t(i)] = c[size_t(i)][size_t(m)];
  return w;
}

// D^k [1/(4 pi |x - y|)] at y = center via tensor-product high-order central
// differences in quad precision, divided by k1! k2! k3!.
inline double kernel_derivative_over_factorial(const ttc::Point3& x,
                                               const ttc::Point3& center,
                                               int k1, int k2, int k3) {
  const int k[3] = {k1, k2, k3};
  const quad_float hstep =
      quad_float(0.007) * quad_float(ttc::distance(x, center));

  std::array<std::vector<quad_float>, 3> weights;
  std::array<std::vector<quad_float>, 3> offsets;
  for (int ax = 0; ax < 3; ++ax) {
    if (k[ax] == 0) {
      weights[size_t(ax)] = {quad_float(1)};
      offsets[size_t(ax)] = {quad_float(0)};
      continue;
    }
    int nodes = k[ax] + 9;
    if (nodes % 2 == 0) ++nodes;  // centered stencil
    std::vector<quad_float> z(static_cast<size_t>(nodes));
    for (int i = 0; i < nodes; ++i) z[size_t(i)] = (i - nodes / 2) * hstep;
    weights[size_t(ax)] = fornberg_weights(k[ax], z);
    offsets[size_t(ax)] = z;
  }

  const quad_float cx = x.x, cy = x.y, cz = x.z;
  quad_float sum = 0;
  for (size_t i = 0; i < weights[0].size(); ++i)
    for (size_t j = 0; j < weights[1].size(); ++j)
      for (size_t l = 0; l < weights[2].size(); ++l) {
        const quad_float dx = cx - (quad_float(center.x) + offsets[0][i]);
        const quad_float dy = cy - (quad_float(center.y) + offsets[1][j]);
        const quad_float dz = cz - (quad_float(center.z) + offsets[2][l]);
        const quad_float g = 1 / sqrtq(dx * dx + dy * dy + dz * dz);
        sum += weights[0][i] * weights[1][j] * weights[2][l] * g;
      }
  quad_float factorial = 1;
  for (int q = 2; q <= k1; ++q) factorial *= q;
  for (int q = 2; q <= k2; ++q) factorial *= q;
  for (int q = 2; q <= k3; ++q) factorial *= q;
  return double(sum / (4 * M_PIq * factorial));
}

// Exact integral of lam0^e0 lam1^e1 lam2^e2 lam3^e3 over a tetrahedron of
// volume V: 6 V e0! e1! e2! e3! / (sum + 3)!.
inline double barycentric_monomial_integral(const std::array<int, 4>& e,
                                            double volume) {
  long double num = 1.0L;
  for (int exp : e)
    for (int q = 2; q <= exp; ++q) num *= q;
  long double den = 1.0L;
  const int total = e[0] + e[1] + e[2] + e[3];
  for (int q = 2; q <= total + 3; ++q) den *= q;
  return double(6.0L * volume * num / den);
}

// Monte Carlo integral of f over a tetrahedron (uniform sampling by folded
// barycentric coordinates).
inline double monte_carlo_integral(
    const std::function<double(const ttc::Point3&)>& f,
    const std::array<ttc::Point3, 4>& corners, double volume, int64_t samples,
    uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long double sum = 0.0L;
  for (int64_t s = 0; s < samples; ++s) {
    double a = unit(rng), b = unit(rng), c = unit(rng);
    // fold the unit cube onto the simplex
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    if (b + c > 1.0) {
      const double t = c;
      c = 1.0 - a - b;
      b = 1.0 - t;
    } else if (a + b + c > 1.0) {
      const double t = c;
      c = a + b + c - 1.0;
      a = 1.0 - b - t;
    }
    const double l0 = 1.0 - a - b - c;
    ttc::Point3 p = corners[0] * l0 + corners[1] * a + corners[2] * b +
                    corners[3] * c;
    sum += f(p);
  }
  return double(sum / samples) * volume;
}

// Gauss-Legendre nodes/weights on [0, 1] by Newton iteration on P_n.
inline void gauss_legendre_01(int n, std::vector<double>& nodes,
                              std::vector<double>& weights) {
  nodes.resize(size_t(n));
  weights.resize(size_t(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[size_t(i)] = 0.5 * (1.0 - x);  // descending cos -> ascending node
    weights[size_t(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Exact-to-roundoff integral over a tetrahedron via the Duffy transform and
// a tensor Gauss-Legendre grid; independent of the library quadrature.
// Polynomials up to total degree ~2n-3 are integrated exactly.
inline double duffy_integral(const std::function<double(const ttc::Point3&)>& f,
                             const std::array<ttc::Point3, 4>& corners,
                             double volume, int n = 12) {
  std::vector<double> z, w;
  gauss_legendre_01(n, z, w);
  long double sum = 0.0L;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double l1 = z[size_t(i)];
        const double l2 = z[size_t(j)] * (1.0 - l1);
        const double l3 = z[size_t(k)] * (1.0 - l1) * (1.0 - z[size_t(j)]);
        const double l0 = 1.0 - l1 - l2 - l3;
        const double jac =
            (1.0 - l1) * (1.0 - l1) * (1.0 - z[size_t(j)]);
        const ttc::Point3 p = corners[0] * l0 + corners[1] * l1 +
                              corners[2] * l2 + corners[3] * l3;
        sum += w[size_t(i)] * w[size_t(j)] * w[size_t(k)] * jac * f(p);
      }
  return double(sum) * 6.0 * volume;
}

// Barycentric coordinates of p in the tetrahedron, via signed volumes.
inline std::array<double, 4> barycentric_coords(
    const std::array<ttc::Point3, 4>& corners, const ttc::Point3& p) {
  const double total = ttc::signed_volume(corners[0], corners[1], corners[2],
                                          corners[3]);
  std::array<double, 4> lam{};
  std::array<ttc::Point3, 4> work = corners;
  for (int i = 0; i < 4; ++i) {
    work = corners;
    work[size_t(i)] = p;
    lam[size_t(i)] = ttc::signed_volume(work[0], work[1], work[2], work[3]) /
                     total;
  }
  return lam;
}

}  // namespace oracles
