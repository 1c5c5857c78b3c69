#include <doctest.h>

#include <cmath>
#include <random>

#include "wg/errors.hpp"
#include "wg/interp.hpp"
#include "wg/problems.hpp"
#include "wg/wg_core.hpp"

using namespace wg;

namespace {

constexpr double kPi = 3.14159265358979323846;

ContinuousField sine_field() { return sine_problem().field(); }

// Broken H1 seminorm of (u - interpolant) by high-order quadrature.
double interp_h1_error(const WGSpace& s, const ContinuousField& u) {
  const WeakFunction v = interpolate(s, u);
  const QuadratureRule q = gauss_rule(s.k + 5);
  double acc = 0.0;
  for (int e = 0; e < s.mesh.nelem(); ++e) {
    double x0, x1, y0, y1;
    s.mesh.elem_box(e, x0, x1, y0, y1);
    const double jac = 0.25 * (x1 - x0) * (y1 - y0);
    for (std::size_t a = 0; a < q.points.size(); ++a)
      for (std::size_t b = 0; b < q.points.size(); ++b) {
        const double x = affine(x0, x1, q.points[a]);
        const double y = affine(y0, y1, q.points[b]);
        const auto gu = u.gradient(x, y);
        const auto gv = v0_gradient(s, v, e, x, y);
        const double dx = gu[0] - gv[0], dy = gu[1] - gv[1];
        acc += q.weights[a] * q.weights[b] * jac * (dx * dx + dy * dy);
      }
  }
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("interpolation reproduces polynomials of degree k") {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> dist(0.0, 1.0);

  const ContinuousField bilinear{
      [](double x, double y) { return x * y; },
      [](double x, double y) { return std::array<double, 2>{y, x}; }};
  const WGSpace s1 = make_space(build_uniform(3, 1), 1.0);
  const WeakFunction v1 = interpolate(s1, bilinear);
  for (int i = 0; i < 50; ++i) {
    const double x = dist(gen), y = dist(gen);
    const int e = find_element(s1.mesh, x, y);
    CHECK(std::abs(v0_value(s1, v1, e, x, y) - x * y) <= 1e-12);
  }

  const ContinuousField biquad{
      [](double x, double y) { return x * x * (y * y - 0.5 * y + 0.25); },
      nullptr};
  const WGSpace s2 = make_space(build_perturbed(0, 2), 1.0);
  const WeakFunction v2 = interpolate(s2, biquad);
  for (int i = 0; i < 50; ++i) {
    const double x = dist(gen), y = dist(gen);
    const int e = find_element(s2.mesh, x, y);
    CHECK(std::abs(v0_value(s2, v2, e, x, y) - biquad.value(x, y)) <= 1e-12);
  }
}

TEST_CASE("interpolant stores function values at nodes") {
  const WGSpace s = make_space(build_uniform(2, 1), 1.0);
  const WeakFunction v = interpolate(s, sine_field());
  // (0.5, 0.5) is a corner of all four elements and an endpoint of four
  // edges; every coincident dof must carry sin^2(pi/2) = 1.
  CHECK(v.coef[s.interior_dof(s.mesh.elem_id(0, 0), 1, 1)] == 1.0);
  CHECK(v.coef[s.interior_dof(s.mesh.elem_id(1, 0), 0, 1)] == 1.0);
  CHECK(v.coef[s.interior_dof(s.mesh.elem_id(0, 1), 1, 0)] == 1.0);
  CHECK(v.coef[s.interior_dof(s.mesh.elem_id(1, 1), 0, 0)] == 1.0);
  CHECK(v.coef[s.trace_dof(s.mesh.vedge_id(1, 0), 1)] == 1.0);
  CHECK(v.coef[s.trace_dof(s.mesh.vedge_id(1, 1), 0)] == 1.0);
  CHECK(v.coef[s.trace_dof(s.mesh.hedge_id(0, 1), 1)] == 1.0);
  CHECK(v.coef[s.trace_dof(s.mesh.hedge_id(1, 1), 0)] == 1.0);
}

TEST_CASE("interpolation error decays at first order in the h1 seminorm") {
  const ContinuousField u = sine_field();
  std::vector<double> errs;
  for (int n : {8, 16, 32})
    errs.push_back(interp_h1_error(make_space(build_uniform(n, 1), 1.0), u));
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double order = std::log2(errs[i - 1] / errs[i]);
    CHECK(std::abs(order - 1.0) <= 0.05);
  }
}

TEST_CASE("interpolants are continuous, solutions are not") {
  const WGSpace s = make_space(build_uniform(8, 1), 1.0);
  CHECK(trace_jump_is_zero(s, interpolate(s, sine_field())));
  CHECK(max_trace_jump(s, interpolate(s, sine_field())) == 0.0);
  CHECK(trace_jump_is_zero(s, zero_function(s)));

  const WeakFunction uh = solve_wg(s, sine_problem().f);
  CHECK_FALSE(trace_jump_is_zero(s, uh));
  CHECK(max_trace_jump(s, uh) > 1e-6);
}

TEST_CASE("interpolation is a projection") {
  const WGSpace s = make_space(build_uniform(4, 2), 1.0);
  const WeakFunction v = interpolate(s, sine_field());
  // evaluate the interpolant itself as a continuous field and re-interpolate
  const ContinuousField as_field{
      [&](double x, double y) {
        return v0_value(s, v, find_element(s.mesh, x, y), x, y);
      },
      nullptr};
  const WeakFunction w = interpolate(s, as_field);
  CHECK((w.coef - v.coef).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("nodal basis satisfies partition of unity and moment identities") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k : {1, 2, 3}) {
    const LobattoPointSet ps = lobatto_points(k);
    for (int trial = 0; trial < 20; ++trial) {
      const double x = dist(gen);
      double pou = 0.0;
      std::vector<double> moments(k, 0.0);
      for (int i = 0; i <= k; ++i) {
        const double l = lagrange_eval(ps, i, x);
        pou += l;
        double p = 1.0;
        for (int m = 1; m <= k; ++m) {
          p *= ps.points[i] - x;
          moments[m - 1] += p * l;
        }
      }
      CHECK(pou == doctest::Approx(1.0).epsilon(1e-13));
      for (int m = 1; m <= k; ++m) CHECK(std::abs(moments[m - 1]) <= 1e-13);
    }
  }
}
