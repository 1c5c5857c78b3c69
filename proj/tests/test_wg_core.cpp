#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "wg/errors.hpp"
#include "wg/exceptions.hpp"
#include "wg/interp.hpp"
#include "wg/problems.hpp"
#include "wg/wg_core.hpp"

using namespace wg;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Dense symmetric matrix of the reduced bilinear form.
DenseMatrix dense_reduced(const WGSpace& s) {
  const SparseSymMatrix A = assemble(s);
  return DenseMatrix(A);
}

// Broken H1 seminorm of the interior part, by per-element quadrature.
double broken_h1(const WGSpace& s, const WeakFunction& v) {
  const QuadratureRule q = gauss_rule(s.k + 3);
  double acc = 0.0;
  for (int e = 0; e < s.mesh.nelem(); ++e) {
    double x0, x1, y0, y1;
    s.mesh.elem_box(e, x0, x1, y0, y1);
    const double jac = 0.25 * (x1 - x0) * (y1 - y0);
    for (std::size_t a = 0; a < q.points.size(); ++a)
      for (std::size_t b = 0; b < q.points.size(); ++b) {
        const double x = affine(x0, x1, q.points[a]);
        const double y = affine(y0, y1, q.points[b]);
        const auto g = v0_gradient(s, v, e, x, y);
        acc += q.weights[a] * q.weights[b] * jac * (g[0] * g[0] + g[1] * g[1]);
      }
  }
  return std::sqrt(acc);
}

WeakFunction random_member(const WGSpace& s, unsigned seed, bool zero_boundary) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  WeakFunction v = zero_function(s);
  for (int i = 0; i < s.ndof; ++i)
    v.coef[i] = (zero_boundary && s.boundary_dof[i]) ? 0.0 : dist(gen);
  return v;
}

}  // namespace

TEST_CASE("space dimensions and boundary flags") {
  for (int k : {1, 2}) {
    const TensorMesh m = build_uniform(4, k);
    const WGSpace s = make_space(m, 2.0);
    CHECK(s.nloc_int == (k + 1) * (k + 1));
    CHECK(s.nloc_trace == k + 1);
    CHECK(s.ndof == (k + 1) * (k + 1) * m.nelem() + (k + 1) * m.nedge());
    int nb = 0;
    for (int i = 0; i < s.ndof; ++i) nb += s.boundary_dof[i] ? 1 : 0;
    int nbedge = 0;
    for (int g = 0; g < m.nedge(); ++g) nbedge += m.edge_is_boundary(g) ? 1 : 0;
    CHECK(nb == (k + 1) * nbedge);
    CHECK(s.nreduced == s.ndof - nb);
  }
  CHECK_THROWS_AS(make_space(build_uniform(4, 1), 0.5), InvalidParameterError);
  CHECK_THROWS_AS(make_space(build_uniform(4, 1), -1.0), InvalidParameterError);
}

TEST_CASE("weak gradient of a constant vanishes") {
  for (int k : {1, 2, 3}) {
    const WGSpace s = make_space(build_uniform(2, k), 1.0);
    Vector local = Vector::Constant(s.nloc, 3.25);
    for (int e = 0; e < s.mesh.nelem(); ++e) {
      const auto [c1, c2] = weak_gradient_local(s, e, local);
      CHECK(c1.lpNorm<Eigen::Infinity>() <= 1e-13);
      CHECK(c2.lpNorm<Eigen::Infinity>() <= 1e-13);
    }
  }
}

TEST_CASE("weak gradient of a linear coordinate function is its slope") {
  for (int k : {1, 2}) {
    const TensorMesh m = build_uniform(2, k);
    const WGSpace s = make_space(m, 2.0);
    const WeakFunction v = interpolate(s, ContinuousField{
        [](double x, double) { return x; },
        [](double, double) { return std::array<double, 2>{1.0, 0.0}; }});
    for (int e = 0; e < m.nelem(); ++e) {
      const Vector local = local_coeffs(s, v.coef, e);
      const auto [c1, c2] = weak_gradient_local(s, e, local);
      double x0, x1, y0, y1;
      m.elem_box(e, x0, x1, y0, y1);
      for (double tx : {0.2, 0.7})
        for (double ty : {0.35, 0.9}) {
          const auto g = weak_gradient_value(s, e, c1, c2, x0 + tx * (x1 - x0),
                                             y0 + ty * (y1 - y0));
          CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-12));
          CHECK(std::abs(g[1]) <= 1e-12);
        }
    }
  }
}

TEST_CASE("weak gradient matches a dense gram-system oracle") {
  // v_0 = 1, v_b = 0: the weak gradient picks up only the -(v_0, div q)
  // volume term. Solve the full (non-orthogonal) Gram system by brute force
  // on a reference element and compare.
  for (int k : {1, 2}) {
    const TensorMesh m = build_uniform(2, k);
    const WGSpace s = make_space(m, 1.0);
    const int e = 0;
    double x0, x1, y0, y1;
    m.elem_box(e, x0, x1, y0, y1);
    Vector local = Vector::Zero(s.nloc);
    for (int i = 0; i < s.nloc_int; ++i) local[i] = 1.0;

    const auto [c1, c2] = weak_gradient_local(s, e, local);

    // Brute force: basis of W_k = [Q_{k-1,k}, Q_{k,k-1}] as monomials in the
    // reference coordinates (tx, ty) in [-1,1]^2.
    const int n1 = k * (k + 1);  // monomials per component
    const int dim = 2 * n1;
    const QuadratureRule q = gauss_rule(k + 2);
    const double hx = x1 - x0, hy = y1 - y0;
    auto mono = [&](int comp, int idx, double tx, double ty,
                    double& vx, double& vy, double& div) {
      // component 0: x-part (px <= k-1, py <= k), component 1: y-part
      const int px = comp == 0 ? idx % k : idx % (k + 1);
      const int py = comp == 0 ? idx / k : idx / (k + 1);
      const double val = std::pow(tx, px) * std::pow(ty, py);
      vx = comp == 0 ? val : 0.0;
      vy = comp == 0 ? 0.0 : val;
      if (comp == 0)
        div = px == 0 ? 0.0
                      : px * std::pow(tx, px - 1) * std::pow(ty, py) * (2.0 / hx);
      else
        div = py == 0 ? 0.0
                      : py * std::pow(tx, px) * std::pow(ty, py - 1) * (2.0 / hy);
    };
    DenseMatrix G = DenseMatrix::Zero(dim, dim);
    Vector rhs = Vector::Zero(dim);
    const double jac = 0.25 * hx * hy;
    for (std::size_t a = 0; a < q.points.size(); ++a)
      for (std::size_t b = 0; b < q.points.size(); ++b) {
        const double tx = q.points[a], ty = q.points[b];
        const double w = q.weights[a] * q.weights[b] * jac;
        for (int i = 0; i < dim; ++i) {
          double vix, viy, divi;
          mono(i < n1 ? 0 : 1, i % n1, tx, ty, vix, viy, divi);
          rhs[i] += -w * divi;  // -(1, div q); v_b = 0 kills the edge term
          for (int j = 0; j < dim; ++j) {
            double vjx, vjy, divj;
            mono(j < n1 ? 0 : 1, j % n1, tx, ty, vjx, vjy, divj);
            G(i, j) += w * (vix * vjx + viy * vjy);
          }
        }
      }
    const Vector coef = G.ldlt().solve(rhs);
    // Compare the two representations pointwise.
    for (double tx : {-0.6, 0.1, 0.8})
      for (double ty : {-0.3, 0.5}) {
        double gx = 0.0, gy = 0.0;
        for (int i = 0; i < dim; ++i) {
          double vix, viy, div;
          mono(i < n1 ? 0 : 1, i % n1, tx, ty, vix, viy, div);
          gx += coef[i] * vix;
          gy += coef[i] * viy;
        }
        const auto g = weak_gradient_value(s, e, c1, c2, affine(x0, x1, tx),
                                           affine(y0, y1, ty));
        CHECK(g[0] == doctest::Approx(gx).epsilon(1e-10));
        CHECK(g[1] == doctest::Approx(gy).epsilon(1e-10));
      }
  }
}

TEST_CASE("weak gradient of an interpolant equals the interior gradient") {
  const ContinuousField u{
      [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); },
      [](double x, double y) {
        return std::array<double, 2>{
            kPi * std::cos(kPi * x) * std::sin(kPi * y),
            kPi * std::sin(kPi * x) * std::cos(kPi * y)};
      }};
  for (int k : {1, 2, 3}) {
    const WGSpace s = make_space(build_perturbed(0, k), 2.0);
    const WeakFunction v = interpolate(s, u);
    for (int e = 0; e < s.mesh.nelem(); ++e) {
      const Vector local = local_coeffs(s, v.coef, e);
      const auto [c1, c2] = weak_gradient_local(s, e, local);
      double x0, x1, y0, y1;
      s.mesh.elem_box(e, x0, x1, y0, y1);
      for (double tx : {0.1, 0.5, 0.95})
        for (double ty : {0.3, 0.8}) {
          const double x = x0 + tx * (x1 - x0), y = y0 + ty * (y1 - y0);
          const auto gw = weak_gradient_value(s, e, c1, c2, x, y);
          const auto g0 = v0_gradient(s, v, e, x, y);
          CHECK(std::abs(gw[0] - g0[0]) <= 1e-11);
          CHECK(std::abs(gw[1] - g0[1]) <= 1e-11);
        }
    }
  }
}

TEST_CASE("assembled matrix is symmetric") {
  const WGSpace s = make_space(build_uniform(4, 1), 2.0);
  const DenseMatrix A = dense_reduced(s);
  const double scale = A.cwiseAbs().maxCoeff();
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("stabilizer vanishes on continuous functions") {
  const Problem p = sine_problem();
  for (int k : {1, 2}) {
    const WGSpace s = make_space(build_uniform(4, k), 3.0);
    const WeakFunction w = interpolate(s, p.field());
    const auto parts = energy_parts(s, w);
    CHECK(parts[1] <= 1e-20);  // jump penalty of a continuous function
    // and the energy norm collapses to the broken H1 seminorm
    CHECK(energy_norm(s, w) ==
          doctest::Approx(broken_h1(s, w)).epsilon(1e-10));
  }
}

TEST_CASE("bilinear form is positive on random nonzero members") {
  const WGSpace s = make_space(build_uniform(4, 1), 1.0);
  const SparseSymMatrix A = assemble(s);
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const WeakFunction v = random_member(s, seed, true);
    const Vector r = reduce_vector(s, v.coef);
    REQUIRE(r.norm() > 0.0);
    CHECK(r.dot(A * r) > 0.0);
  }
}

TEST_CASE("reduced matrix is positive definite on small meshes") {
  for (int n : {2, 3, 4}) {
    for (int k : {1, 2}) {
      const WGSpace s = make_space(build_uniform(n, k), 1.0);
      const DenseMatrix A = dense_reduced(s);
      Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(A);
      CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("load vector basics") {
  const WGSpace s = make_space(build_uniform(2, 1), 2.0);
  const Vector z = load_vector(s, [](double, double) { return 0.0; });
  CHECK(z.lpNorm<Eigen::Infinity>() == 0.0);

  // f = 1: each interior dof entry is the integral of its bilinear hat,
  // |T|/4 on a k=1 element.
  const Vector one = load_vector(s, [](double, double) { return 1.0; });
  for (int e = 0; e < s.mesh.nelem(); ++e)
    for (int a = 0; a < s.nloc_int; ++a)
      CHECK(one[s.interior_dof(e, a % 2, a / 2)] ==
            doctest::Approx(0.25 * 0.25).epsilon(1e-14));
  // trace dofs receive nothing
  for (int i = s.mesh.nelem() * s.nloc_int; i < s.ndof; ++i)
    CHECK(one[i] == 0.0);
}

TEST_CASE("load vector matches an independent high-order quadrature") {
  const Problem p = sine_problem();
  const WGSpace s = make_space(build_uniform(2, 2), 2.0);
  const Vector b = load_vector(s, p.f);
  const QuadratureRule q = gauss_rule(12);
  for (int e = 0; e < s.mesh.nelem(); ++e) {
    double x0, x1, y0, y1;
    s.mesh.elem_box(e, x0, x1, y0, y1);
    const double jac = 0.25 * (x1 - x0) * (y1 - y0);
    for (int ay = 0; ay <= s.k; ++ay)
      for (int ax = 0; ax <= s.k; ++ax) {
        double acc = 0.0;
        for (std::size_t ia = 0; ia < q.points.size(); ++ia)
          for (std::size_t ib = 0; ib < q.points.size(); ++ib) {
            const double tx = q.points[ia], ty = q.points[ib];
            acc += q.weights[ia] * q.weights[ib] * jac *
                   p.f(affine(x0, x1, tx), affine(y0, y1, ty)) *
                   lagrange_eval(s.lob, ax, tx) * lagrange_eval(s.lob, ay, ty);
          }
        CHECK(b[s.interior_dof(e, ax, ay)] == doctest::Approx(acc).epsilon(1e-10));
      }
  }
}

TEST_CASE("solve reproduces a biquadratic exactly") {
  const ContinuousField u{
      [](double x, double y) { return x * (1 - x) * y * (1 - y); },
      [](double x, double y) {
        return std::array<double, 2>{(1 - 2 * x) * y * (1 - y),
                                     x * (1 - x) * (1 - 2 * y)};
      }};
  const auto f = [](double x, double y) {
    return 2 * (x * (1 - x) + y * (1 - y));
  };
  const WGSpace s = make_space(build_uniform(4, 2), 2.0);
  const WeakFunction uh = solve_wg(s, f);
  const double err = supercloseness_error(s, u, uh);
  CHECK(err <= 1e-9);
}

TEST_CASE("solve hits tabulated supercloseness probes") {
  const Problem p = sine_problem();
  {
    const WGSpace s = make_space(build_uniform(8, 1), 3.0);
    const WeakFunction uh = solve_wg(s, p.f);
    CHECK(supercloseness_error(s, p.field(), uh) ==
          doctest::Approx(1.3216e-01).epsilon(0.005));
  }
  {
    const WGSpace s = make_space(build_uniform(128, 1), 1.0);
    const WeakFunction uh = solve_wg(s, p.f);
    CHECK(supercloseness_error(s, p.field(), uh) ==
          doctest::Approx(4.5847e-02).epsilon(0.005));
  }
}

TEST_CASE("solver residual meets the advertised tolerance") {
  const Problem p = sine_problem();
  const WGSpace s = make_space(build_uniform(8, 1), 3.0);
  const WeakFunction uh = solve_wg(s, p.f);
  const SparseSymMatrix A = assemble(s);
  const Vector b = reduce_vector(s, load_vector(s, p.f));
  const Vector r = A * reduce_vector(s, uh.coef) - b;
  CHECK(r.norm() <= 1.01e-7 * b.norm());
}

TEST_CASE("boundary-value solve reproduces a harmonic linear exactly") {
  const ContinuousField u{
      [](double x, double) { return x; },
      [](double, double) { return std::array<double, 2>{1.0, 0.0}; }};
  const WGSpace s = make_space(build_uniform(4, 1), 2.0);
  const WeakFunction iu = interpolate(s, u);
  const WeakFunction uh =
      solve_with_boundary(s, [](double, double) { return 0.0; }, iu.coef);
  WeakFunction diff{&s, uh.coef - iu.coef};
  CHECK(energy_norm(s, diff) <= 1e-6);
}

TEST_CASE("energy norm basics") {
  const WGSpace s = make_space(build_uniform(3, 1), 2.0);
  CHECK(energy_norm(s, zero_function(s)) == 0.0);

  const SparseSymMatrix Afull = assemble_unreduced(s);
  for (unsigned seed : {5u, 6u}) {
    const WeakFunction v = random_member(s, seed, false);
    const double qform = v.coef.dot(Afull * v.coef);
    const double en = energy_norm(s, v);
    CHECK(en * en == doctest::Approx(qform).epsilon(1e-10));
  }
}

TEST_CASE("gradient seminorm stays comparable to the energy norm") {
  double prev_ratio = 0.0;
  for (int n : {4, 8}) {
    const WGSpace s = make_space(build_uniform(n, 1), 2.0);
    double worst = 0.0;
    for (unsigned seed = 1; seed <= 100; ++seed) {
      const WeakFunction v = random_member(s, seed, true);
      const double en = energy_norm(s, v);
      REQUIRE(en > 0.0);
      worst = std::max(worst, broken_h1(s, v) / en);
    }
    if (prev_ratio > 0.0) CHECK(worst < 2.0 * prev_ratio);
    prev_ratio = worst;
  }
}

TEST_CASE("solution dump is one labeled line per dof") {
  const WGSpace s = make_space(build_uniform(2, 1), 1.0);
  const WeakFunction v = random_member(s, 9, false);
  std::ostringstream os;
  dump_solution(s, v, os);
  std::istringstream is(os.str());
  std::string line;
  int count = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    int id, owner, loc;
    std::string kind;
    double value;
    REQUIRE((ls >> id >> kind >> owner >> loc >> value));
    CHECK(id == count);
    CHECK((kind == "I" || kind == "E"));
    CHECK(value == v.coef[id]);  // 17 digits round-trip
    ++count;
  }
  CHECK(count == s.ndof);
}
