#include "wg/wg_core.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "wg/exceptions.hpp"

namespace wg {

namespace {

// Local side order: left, right, bottom, top (matching elem_edges).
constexpr int kSides = 4;

int side_interior_dof(int k, int side, int t) {
  // Interior-layer node adjacent to a side, in the side's trace order.
  switch (side) {
    case 0: return t * (k + 1);          // left:   ax = 0,  ay = t
    case 1: return t * (k + 1) + k;      // right:  ax = k,  ay = t
    case 2: return t;                    // bottom: ax = t,  ay = 0
    default: return k * (k + 1) + t;     // top:    ax = t,  ay = k
  }
}

}  // namespace

double WGSpace::penalty_factor(double hx, double hy) const {
  const double ht = (hscale == StabilizerScale::ElementDiagonal)
                        ? std::hypot(hx, hy)
                        : hglobal_;
  return std::pow(ht, -alpha);
}

const LocalOperators& WGSpace::local_ops(int e) const {
  double x0, x1, y0, y1;
  mesh.elem_box(e, x0, x1, y0, y1);
  const double hx = x1 - x0, hy = y1 - y0;
  const auto key = std::make_pair(hx, hy);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  const int kk = k, n0 = nloc_int, nb = nloc_trace, dim = wbasis.component_dim();
  LocalOperators ops;
  ops.B1 = DenseMatrix::Zero(dim, nloc);
  ops.B2 = DenseMatrix::Zero(dim, nloc);
  ops.D1 = Vector(dim);
  ops.D2 = Vector(dim);

  for (int a1 = 0; a1 < dim; ++a1) {
    ops.D1[a1] = wbasis.gram_diag1(a1, hx, hy);
    ops.D2[a1] = wbasis.gram_diag2(a1, hx, hy);
  }

  // Moment maps: (grad_w v, q)_T = -(v_0, div q)_T + <v_b, q.n>_dT.
  for (int a1 = 0; a1 < dim; ++a1) {
    const int i = wbasis.xdeg1(a1), j = wbasis.ydeg1(a1);
    for (int ay = 0; ay <= kk; ++ay)
      for (int ax = 0; ax <= kk; ++ax)
        ops.B1(a1, ay * (kk + 1) + ax) =
            -(hy / 2.0) * int_ldp(ax, i) * int_lp(ay, j);
    for (int t = 0; t <= kk; ++t) {
      ops.B1(a1, n0 + 0 * nb + t) += -(hy / 2.0) * p_at_m1[i] * int_lp(t, j);
      ops.B1(a1, n0 + 1 * nb + t) += (hy / 2.0) * p_at_p1[i] * int_lp(t, j);
    }
  }
  for (int a2 = 0; a2 < dim; ++a2) {
    const int i = wbasis.xdeg2(a2), j = wbasis.ydeg2(a2);
    for (int ay = 0; ay <= kk; ++ay)
      for (int ax = 0; ax <= kk; ++ax)
        ops.B2(a2, ay * (kk + 1) + ax) =
            -(hx / 2.0) * int_lp(ax, i) * int_ldp(ay, j);
    for (int t = 0; t <= kk; ++t) {
      ops.B2(a2, n0 + 2 * nb + t) += -(hx / 2.0) * p_at_m1[j] * int_lp(t, i);
      ops.B2(a2, n0 + 3 * nb + t) += (hx / 2.0) * p_at_p1[j] * int_lp(t, i);
    }
  }

  DenseMatrix kgrad = ops.B1.transpose() * ops.D1.cwiseInverse().asDiagonal() *
                          ops.B1 +
                      ops.B2.transpose() * ops.D2.cwiseInverse().asDiagonal() *
                          ops.B2;

  // Penalty: h_T^{-alpha} <v_0 - v_b, w_0 - w_b> over each side.
  const double hs = penalty_factor(hx, hy);
  const double side_len[kSides] = {hy, hy, hx, hx};
  ops.Kstab = DenseMatrix::Zero(nloc, nloc);
  for (int side = 0; side < kSides; ++side) {
    DenseMatrix jump = DenseMatrix::Zero(nb, nloc);
    for (int t = 0; t < nb; ++t) {
      jump(t, side_interior_dof(kk, side, t)) = 1.0;
      jump(t, n0 + side * nb + t) = -1.0;
    }
    const DenseMatrix me = (side_len[side] / 2.0) * hs * mass1d;
    ops.Kstab += jump.transpose() * me * jump;
  }
  ops.K = kgrad + ops.Kstab;

  auto [pos, inserted] = cache_.emplace(key, std::move(ops));
  return pos->second;
}

WGSpace make_space(const TensorMesh& mesh, double alpha, StabilizerScale hs) {
  if (mesh.k < 1)
    throw UnsupportedDegreeError("make_space: degree must be >= 1");
  if (mesh.nx() < 1 || mesh.ny() < 1)
    throw InvalidMeshError("make_space: empty mesh");
  for (int i = 0; i < mesh.nx(); ++i)
    if (!(mesh.xs[i] < mesh.xs[i + 1]))
      throw InvalidMeshError("make_space: x breakpoints must ascend");
  for (int j = 0; j < mesh.ny(); ++j)
    if (!(mesh.ys[j] < mesh.ys[j + 1]))
      throw InvalidMeshError("make_space: y breakpoints must ascend");
  if (!(alpha >= 1.0))
    throw InvalidParameterError("make_space: penalty exponent must be >= 1, got " +
                                std::to_string(alpha));
  WGSpace s;
  s.mesh = mesh;
  s.k = mesh.k;
  s.alpha = alpha;
  s.hscale = hs;
  s.lob = lobatto_points(s.k);
  s.quad = gauss_rule(s.k + 3);
  s.wbasis = wgrad_basis(s.k);
  s.nloc_int = (s.k + 1) * (s.k + 1);
  s.nloc_trace = s.k + 1;
  s.nloc = s.nloc_int + 4 * s.nloc_trace;
  s.ndof = s.nloc_int * mesh.nelem() + s.nloc_trace * mesh.nedge();
  s.hglobal_ = mesh.h();

  const int nq = static_cast<int>(s.quad.points.size());
  s.lag_q = DenseMatrix(nq, s.k + 1);
  for (int q = 0; q < nq; ++q)
    for (int a = 0; a <= s.k; ++a)
      s.lag_q(q, a) = lagrange_eval(s.lob, a, s.quad.points[q]);

  s.mass1d = DenseMatrix::Zero(s.k + 1, s.k + 1);
  s.int_lp = DenseMatrix::Zero(s.k + 1, s.k + 1);
  s.int_ldp = DenseMatrix::Zero(s.k + 1, s.k + 1);
  for (int a = 0; a <= s.k; ++a)
    for (int j = 0; j <= s.k; ++j) {
      double mab = 0.0, mlp = 0.0, mld = 0.0;
      for (int q = 0; q < nq; ++q) {
        const double w = s.quad.weights[q], x = s.quad.points[q];
        mab += w * s.lag_q(q, a) * s.lag_q(q, j);
        mlp += w * s.lag_q(q, a) * legendre_eval(j, x);
        mld += w * s.lag_q(q, a) * legendre_deriv(j, x);
      }
      s.mass1d(a, j) = mab;
      s.int_lp(a, j) = mlp;
      s.int_ldp(a, j) = mld;
    }
  s.p_at_m1 = Vector(s.k + 1);
  s.p_at_p1 = Vector(s.k + 1);
  for (int j = 0; j <= s.k; ++j) {
    s.p_at_m1[j] = legendre_eval(j, -1.0);
    s.p_at_p1[j] = legendre_eval(j, 1.0);
  }

  s.boundary_dof.assign(s.ndof, false);
  for (int g = 0; g < mesh.nedge(); ++g)
    if (mesh.edge_is_boundary(g))
      for (int t = 0; t <= s.k; ++t) s.boundary_dof[s.trace_dof(g, t)] = true;
  s.reduced_of_dof.assign(s.ndof, -1);
  for (int d = 0; d < s.ndof; ++d)
    if (!s.boundary_dof[d]) {
      s.reduced_of_dof[d] = s.nreduced;
      s.dof_of_reduced.push_back(d);
      ++s.nreduced;
    }
  return s;
}

WeakFunction zero_function(const WGSpace& s) {
  return WeakFunction{&s, Vector::Zero(s.ndof)};
}

namespace {

std::vector<int> local_globals(const WGSpace& s, int e) {
  std::vector<int> g;
  g.reserve(s.nloc);
  for (int ay = 0; ay <= s.k; ++ay)
    for (int ax = 0; ax <= s.k; ++ax) g.push_back(s.interior_dof(e, ax, ay));
  for (int edge : s.mesh.elem_edges(e))
    for (int t = 0; t <= s.k; ++t) g.push_back(s.trace_dof(edge, t));
  return g;
}

}  // namespace

Vector local_coeffs(const WGSpace& s, const Vector& coef, int e) {
  if (coef.size() != s.ndof)
    throw InvalidParameterError("local_coeffs: coefficient size mismatch");
  const auto gl = local_globals(s, e);
  Vector out(s.nloc);
  for (int a = 0; a < s.nloc; ++a) out[a] = coef[gl[a]];
  return out;
}

std::pair<Vector, Vector> weak_gradient_local(const WGSpace& s, int e,
                                              const Vector& local) {
  if (local.size() != s.nloc)
    throw InvalidParameterError("weak_gradient_local: local size mismatch");
  const LocalOperators& ops = s.local_ops(e);
  Vector c1 = (ops.B1 * local).cwiseQuotient(ops.D1);
  Vector c2 = (ops.B2 * local).cwiseQuotient(ops.D2);
  return {std::move(c1), std::move(c2)};
}

std::array<double, 2> weak_gradient_value(const WGSpace& s, int e,
                                          const Vector& c1, const Vector& c2,
                                          double x, double y) {
  double x0, x1, y0, y1;
  s.mesh.elem_box(e, x0, x1, y0, y1);
  const double tx = (2.0 * x - x0 - x1) / (x1 - x0);
  const double ty = (2.0 * y - y0 - y1) / (y1 - y0);
  double g1 = 0.0, g2 = 0.0;
  for (int a = 0; a < s.wbasis.component_dim(); ++a) {
    g1 += c1[a] * s.wbasis.eval1(a, tx, ty);
    g2 += c2[a] * s.wbasis.eval2(a, tx, ty);
  }
  return {g1, g2};
}

namespace {

SparseSymMatrix assemble_impl(const WGSpace& s, bool reduced) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(s.mesh.nelem()) * s.nloc * s.nloc);
  for (int e = 0; e < s.mesh.nelem(); ++e) {
    const LocalOperators& ops = s.local_ops(e);
    const auto gl = local_globals(s, e);
    for (int a = 0; a < s.nloc; ++a) {
      const int ga = reduced ? s.reduced_of_dof[gl[a]] : gl[a];
      if (ga < 0) continue;
      for (int b = 0; b < s.nloc; ++b) {
        const int gb = reduced ? s.reduced_of_dof[gl[b]] : gl[b];
        if (gb < 0) continue;
        const double v = ops.K(a, b);
        if (v != 0.0) trip.emplace_back(ga, gb, v);
      }
    }
  }
  const int n = reduced ? s.nreduced : s.ndof;
  SparseSymMatrix m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

}  // namespace

SparseSymMatrix assemble(const WGSpace& s) { return assemble_impl(s, true); }

SparseSymMatrix assemble_unreduced(const WGSpace& s) {
  return assemble_impl(s, false);
}

Vector load_vector(const WGSpace& s, const ScalarField& f) {
  // A stronger rule than the stiffness needs: f is a general field, and the
  // moments must be accurate to near machine precision on coarse cells.
  const QuadratureRule quad = gauss_rule(std::min(s.k + 8, 20));
  const int nq = static_cast<int>(quad.points.size());
  DenseMatrix lag_q(nq, s.k + 1);
  for (int q = 0; q < nq; ++q)
    for (int a = 0; a <= s.k; ++a)
      lag_q(q, a) = lagrange_eval(s.lob, a, quad.points[q]);

  Vector b = Vector::Zero(s.ndof);
  DenseMatrix fv(nq, nq);
  for (int e = 0; e < s.mesh.nelem(); ++e) {
    double x0, x1, y0, y1;
    s.mesh.elem_box(e, x0, x1, y0, y1);
    const double hx = x1 - x0, hy = y1 - y0;
    for (int qx = 0; qx < nq; ++qx)
      for (int qy = 0; qy < nq; ++qy)
        fv(qx, qy) = f(x0 + (quad.points[qx] + 1.0) * hx / 2.0,
                       y0 + (quad.points[qy] + 1.0) * hy / 2.0);
    const double scal = (hx / 2.0) * (hy / 2.0);
    for (int ay = 0; ay <= s.k; ++ay)
      for (int ax = 0; ax <= s.k; ++ax) {
        double t = 0.0;
        for (int qx = 0; qx < nq; ++qx)
          for (int qy = 0; qy < nq; ++qy)
            t += quad.weights[qx] * quad.weights[qy] * fv(qx, qy) *
                 lag_q(qx, ax) * lag_q(qy, ay);
        b[s.interior_dof(e, ax, ay)] += scal * t;
      }
  }
  return b;
}

Vector reduce_vector(const WGSpace& s, const Vector& full) {
  if (full.size() != s.ndof)
    throw InvalidParameterError("reduce_vector: size mismatch");
  Vector out(s.nreduced);
  for (int r = 0; r < s.nreduced; ++r) out[r] = full[s.dof_of_reduced[r]];
  return out;
}

Vector expand_vector(const WGSpace& s, const Vector& reduced) {
  if (reduced.size() != s.nreduced)
    throw InvalidParameterError("expand_vector: size mismatch");
  Vector out = Vector::Zero(s.ndof);
  for (int r = 0; r < s.nreduced; ++r) out[s.dof_of_reduced[r]] = reduced[r];
  return out;
}

// Residual target for the global solve. The stabilizer's h^{-alpha} rows
// push the attainable floor eps*|M||x|/|b| toward ~5e-9 on fine meshes;
// 1e-7 stays orders of magnitude below the discretization error.
constexpr double kGlobalSolveTol = 1e-7;

WeakFunction solve_wg(const WGSpace& s, const ScalarField& f) {
  const SparseSymMatrix a = assemble(s);
  const Vector b = reduce_vector(s, load_vector(s, f));
  const Vector x = solve_spd(a, b, kGlobalSolveTol);
  return WeakFunction{&s, expand_vector(s, x)};
}

WeakFunction solve_with_boundary(const WGSpace& s, const ScalarField& f,
                                 const Vector& boundary_values) {
  if (boundary_values.size() != s.ndof)
    throw InvalidParameterError("solve_with_boundary: size mismatch");
  Vector lift = Vector::Zero(s.ndof);
  for (int d = 0; d < s.ndof; ++d)
    if (s.boundary_dof[d]) lift[d] = boundary_values[d];
  const SparseSymMatrix afull = assemble_unreduced(s);
  const Vector rhs = reduce_vector(s, load_vector(s, f) - afull * lift);
  const SparseSymMatrix a = assemble(s);
  const Vector x = solve_spd(a, rhs, kGlobalSolveTol);
  Vector full = expand_vector(s, x);
  full += lift;
  return WeakFunction{&s, std::move(full)};
}

namespace {

std::array<double, 2> energy_parts_impl(const WGSpace& s, const WeakFunction& v) {
  if (v.space != &s || v.coef.size() != s.ndof)
    throw InvalidParameterError("energy: function does not match space");
  double grad2 = 0.0, stab2 = 0.0;
  const int n0 = s.nloc_int, nb = s.nloc_trace;
  Vector jd(nb);
  for (int e = 0; e < s.mesh.nelem(); ++e) {
    const LocalOperators& ops = s.local_ops(e);
    const Vector d = local_coeffs(s, v.coef, e);
    // Sum of squares in the orthogonal gradient basis: no cancellation.
    const Vector m1 = ops.B1 * d, m2 = ops.B2 * d;
    grad2 += m1.cwiseAbs2().cwiseQuotient(ops.D1).sum() +
             m2.cwiseAbs2().cwiseQuotient(ops.D2).sum();
    // Penalty from nodal jumps, so a continuous function contributes
    // exactly zero.
    double x0, x1, y0, y1;
    s.mesh.elem_box(e, x0, x1, y0, y1);
    const double hx = x1 - x0, hy = y1 - y0;
    const double hs = s.penalty_factor(hx, hy);
    const double side_len[4] = {hy, hy, hx, hx};
    for (int side = 0; side < 4; ++side) {
      for (int t = 0; t < nb; ++t)
        jd[t] = d[side_interior_dof(s.k, side, t)] - d[n0 + side * nb + t];
      stab2 += (side_len[side] / 2.0) * hs * jd.dot(s.mass1d * jd);
    }
  }
  return {grad2, stab2};
}

}  // namespace

double energy_norm(const WGSpace& s, const WeakFunction& v) {
  const auto p = energy_parts_impl(s, v);
  return std::sqrt(std::max(0.0, p[0] + p[1]));
}

std::array<double, 2> energy_parts(const WGSpace& s, const WeakFunction& v) {
  return energy_parts_impl(s, v);
}

double v0_value(const WGSpace& s, const WeakFunction& v, int e, double x,
                double y) {
  double x0, x1, y0, y1;
  s.mesh.elem_box(e, x0, x1, y0, y1);
  const double tx = (2.0 * x - x0 - x1) / (x1 - x0);
  const double ty = (2.0 * y - y0 - y1) / (y1 - y0);
  double out = 0.0;
  for (int ay = 0; ay <= s.k; ++ay) {
    const double ly = lagrange_eval(s.lob, ay, ty);
    if (ly == 0.0) continue;
    for (int ax = 0; ax <= s.k; ++ax)
      out += v.coef[s.interior_dof(e, ax, ay)] *
             lagrange_eval(s.lob, ax, tx) * ly;
  }
  return out;
}

std::array<double, 2> v0_gradient(const WGSpace& s, const WeakFunction& v,
                                  int e, double x, double y) {
  double x0, x1, y0, y1;
  s.mesh.elem_box(e, x0, x1, y0, y1);
  const double hx = x1 - x0, hy = y1 - y0;
  const double tx = (2.0 * x - x0 - x1) / hx;
  const double ty = (2.0 * y - y0 - y1) / hy;
  double gx = 0.0, gy = 0.0;
  for (int ay = 0; ay <= s.k; ++ay) {
    const double ly = lagrange_eval(s.lob, ay, ty);
    const double dly = lagrange_deriv(s.lob, ay, ty);
    for (int ax = 0; ax <= s.k; ++ax) {
      const double c = v.coef[s.interior_dof(e, ax, ay)];
      gx += c * lagrange_deriv(s.lob, ax, tx) * ly * (2.0 / hx);
      gy += c * lagrange_eval(s.lob, ax, tx) * dly * (2.0 / hy);
    }
  }
  return {gx, gy};
}

void dump_solution(const WGSpace& s, const WeakFunction& v, std::ostream& os) {
  char buf[64];
  const int n0 = s.nloc_int * s.mesh.nelem();
  for (int d = 0; d < s.ndof; ++d) {
    std::snprintf(buf, sizeof buf, "%.17g", v.coef[d]);
    if (d < n0) {
      os << d << " I " << d / s.nloc_int << ' ' << d % s.nloc_int << ' ' << buf
         << '\n';
    } else {
      const int t = d - n0;
      os << d << " E " << t / s.nloc_trace << ' ' << t % s.nloc_trace << ' '
         << buf << '\n';
    }
  }
}

}  // namespace wg
