#include "wg/poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "wg/exceptions.hpp"

namespace wg {

namespace {

// {P_n(x), P_n'(x)} by the three-term recurrences.
std::array<double, 2> legendre_pair(int n, double x) {
  if (n < 0) throw UnsupportedDegreeError("legendre degree must be >= 0");
  double p0 = 1.0, d0 = 0.0;
  if (n == 0) return {p0, d0};
  double p1 = x, d1 = 1.0;
  for (int m = 1; m < n; ++m) {
    const double p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
    const double d2 = d0 + (2 * m + 1) * p1;
    p0 = p1;
    d0 = d1;
    p1 = p2;
    d1 = d2;
  }
  return {p1, d1};
}

}  // namespace

double legendre_eval(int n, double x) { return legendre_pair(n, x)[0]; }

double legendre_deriv(int n, double x) { return legendre_pair(n, x)[1]; }

LobattoPointSet lobatto_points(int k) {
  if (k < 1)
    throw UnsupportedDegreeError("lobatto_points: degree must be >= 1, got " +
                                 std::to_string(k));
  LobattoPointSet ps;
  ps.degree = k;
  ps.points.assign(k + 1, 0.0);
  ps.points[0] = -1.0;
  ps.points[k] = 1.0;
  const double pi = std::acos(-1.0);
  for (int i = 1; i < k; ++i) {
    // Interior nodes are the zeros of P_k'; Newton from the Chebyshev guess.
    double x = std::cos(pi * (k - i) / k);
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre_pair(k, x);
      // P_k'' from the Legendre ODE: (1-x^2) P'' = 2x P' - k(k+1) P.
      const double dd = (2.0 * x * d - k * (k + 1) * p) / (1.0 - x * x);
      const double dx = d / dd;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    ps.points[i] = x;
  }
  // Enforce exact symmetry; the middle node of an even-count set is 0.
  for (int i = 1; 2 * i < k; ++i) {
    const double s = 0.5 * (ps.points[i] - ps.points[k - i]);
    ps.points[i] = s;
    ps.points[k - i] = -s;
  }
  if (k % 2 == 0) ps.points[k / 2] = 0.0;
  return ps;
}

double lagrange_eval(const LobattoPointSet& ps, int i, double x) {
  const int k = ps.degree;
  if (i < 0 || i > k)
    throw IndexError("lagrange_eval: basis index " + std::to_string(i) +
                     " out of range [0, " + std::to_string(k) + "]");
  double v = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j == i) continue;
    v *= (x - ps.points[j]) / (ps.points[i] - ps.points[j]);
  }
  return v;
}

double lagrange_deriv(const LobattoPointSet& ps, int i, double x) {
  const int k = ps.degree;
  if (i < 0 || i > k)
    throw IndexError("lagrange_deriv: basis index " + std::to_string(i) +
                     " out of range [0, " + std::to_string(k) + "]");
  double sum = 0.0;
  for (int m = 0; m <= k; ++m) {
    if (m == i) continue;
    double prod = 1.0 / (ps.points[i] - ps.points[m]);
    for (int j = 0; j <= k; ++j) {
      if (j == i || j == m) continue;
      prod *= (x - ps.points[j]) / (ps.points[i] - ps.points[j]);
    }
    sum += prod;
  }
  return sum;
}

QuadratureRule gauss_rule(int n) {
  if (n < 1 || n > 20)
    throw UnsupportedDegreeError("gauss_rule: point count must be in [1, 20], got " +
                                 std::to_string(n));
  QuadratureRule q;
  q.points.assign(n, 0.0);
  q.weights.assign(n, 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    // Zeros of P_n; Newton from the standard asymptotic guess (descending in x).
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double d = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_pair(n, x);
      d = dp;
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    d = legendre_pair(n, x)[1];
    q.points[n - 1 - i] = x;
    q.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * d * d);
  }
  // Enforce exact symmetry of nodes and weights.
  for (int i = 0; 2 * i < n - 1; ++i) {
    const double s = 0.5 * (q.points[i] - q.points[n - 1 - i]);
    q.points[i] = s;
    q.points[n - 1 - i] = -s;
    const double w = 0.5 * (q.weights[i] + q.weights[n - 1 - i]);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.points[n / 2] = 0.0;
  return q;
}

double WGradBasis::eval1(int a, double tx, double ty) const {
  return legendre_eval(xdeg1(a), tx) * legendre_eval(ydeg1(a), ty);
}

double WGradBasis::eval2(int a, double tx, double ty) const {
  return legendre_eval(xdeg2(a), tx) * legendre_eval(ydeg2(a), ty);
}

double WGradBasis::gram_diag1(int a, double hx, double hy) const {
  const int i = xdeg1(a), j = ydeg1(a);
  // (hx/2)(hy/2) * 2/(2i+1) * 2/(2j+1)
  return hx * hy / ((2.0 * i + 1.0) * (2.0 * j + 1.0));
}

double WGradBasis::gram_diag2(int a, double hx, double hy) const {
  const int i = xdeg2(a), j = ydeg2(a);
  return hx * hy / ((2.0 * i + 1.0) * (2.0 * j + 1.0));
}

WGradBasis wgrad_basis(int k) {
  if (k < 1)
    throw UnsupportedDegreeError("wgrad_basis: degree must be >= 1, got " +
                                 std::to_string(k));
  WGradBasis b;
  b.degree = k;
  return b;
}

}  // namespace wg
