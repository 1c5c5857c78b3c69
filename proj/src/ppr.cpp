#include "wg/ppr.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "wg/exceptions.hpp"
#include "wg/linalg.hpp"

namespace wg {

NodalAverage default_average(int k) {
  return k == 1 ? NodalAverage::AllValues : NodalAverage::InteriorOnly;
}

NodalField reformulate(const WGSpace& s, const WeakFunction& u,
                       NodalAverage avg) {
  if (u.space != &s || u.coef.size() != s.ndof)
    throw InvalidParameterError("reformulate: function does not match space");
  const TensorMesh& m = s.mesh;
  const int k = s.k;
  NodalField f;
  f.nxn = m.node_count_x();
  f.nyn = m.node_count_y();
  f.v.assign(static_cast<std::size_t>(m.node_count()), 0.0);

  std::vector<double> sum0(f.v.size(), 0.0), sumb(f.v.size(), 0.0);
  std::vector<int> cnt0(f.v.size(), 0), cntb(f.v.size(), 0);

  for (int e = 0; e < m.nelem(); ++e) {
    const int ix = e % m.nx(), iy = e / m.nx();
    for (int ay = 0; ay <= k; ++ay)
      for (int ax = 0; ax <= k; ++ax) {
        const int id = m.node_id(ix * k + ax, iy * k + ay);
        sum0[id] += u.coef[s.interior_dof(e, ax, ay)];
        ++cnt0[id];
      }
  }
  for (int i = 0; i <= m.nx(); ++i)
    for (int j = 0; j < m.ny(); ++j) {
      const int g = m.vedge_id(i, j);
      for (int t = 0; t <= k; ++t) {
        const int id = m.node_id(i * k, j * k + t);
        sumb[id] += u.coef[s.trace_dof(g, t)];
        ++cntb[id];
      }
    }
  for (int j = 0; j <= m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      const int g = m.hedge_id(i, j);
      for (int t = 0; t <= k; ++t) {
        const int id = m.node_id(i * k + t, j * k);
        sumb[id] += u.coef[s.trace_dof(g, t)];
        ++cntb[id];
      }
    }

  for (std::size_t id = 0; id < f.v.size(); ++id) {
    if (avg == NodalAverage::AllValues)
      f.v[id] = (sum0[id] + sumb[id]) / (cnt0[id] + cntb[id]);
    else
      f.v[id] = sum0[id] / cnt0[id];
  }
  return f;
}

NodalField reformulate(const WGSpace& s, const WeakFunction& u) {
  return reformulate(s, u, default_average(s.k));
}

int monomial_count(int k) { return (k + 2) * (k + 3) / 2; }

std::vector<std::array<int, 2>> monomial_exponents(int k) {
  std::vector<std::array<int, 2>> out;
  out.reserve(monomial_count(k));
  for (int d = 0; d <= k + 1; ++d)
    for (int px = d; px >= 0; --px) out.push_back({px, d - px});
  return out;
}

namespace {

struct NodeLines {
  std::vector<double> xn, yn;
};

NodeLines node_lines(const WGSpace& s) {
  return {node_line(s.mesh.xs, s.lob), node_line(s.mesh.ys, s.lob)};
}

PatchFit fit_patch_impl(const WGSpace& s, const NodalField& field,
                        const NodeLines& nl, int vi, int vj) {
  const TensorMesh& m = s.mesh;
  const int k = s.k;
  if (vi < 1 || vi > m.nx() - 1 || vj < 1 || vj > m.ny() - 1)
    throw InvalidParameterError("fit_patch: vertex (" + std::to_string(vi) +
                                ", " + std::to_string(vj) +
                                ") is not interior");
  if (field.nxn != m.node_count_x() || field.nyn != m.node_count_y())
    throw InvalidParameterError("fit_patch: field does not match node grid");

  PatchFit fit;
  fit.vi = vi;
  fit.vj = vj;
  fit.xc = m.xs[vi];
  fit.yc = m.ys[vj];
  fit.h = m.h();

  const auto exps = monomial_exponents(k);
  const int mcols = monomial_count(k);
  const int rows = (2 * k + 1) * (2 * k + 1);
  DenseMatrix A(rows, mcols);
  Vector b(rows);
  int r = 0;
  for (int gi = (vi - 1) * k; gi <= (vi + 1) * k; ++gi)
    for (int gj = (vj - 1) * k; gj <= (vj + 1) * k; ++gj, ++r) {
      const double xh = (nl.xn[gi] - fit.xc) / fit.h;
      const double yh = (nl.yn[gj] - fit.yc) / fit.h;
      for (int c = 0; c < mcols; ++c)
        A(r, c) = std::pow(xh, exps[c][0]) * std::pow(yh, exps[c][1]);
      b[r] = field.at(gi, gj);
    }
  fit.coef = least_squares(A, b, m.node_id(vi * k, vj * k));
  return fit;
}

}  // namespace

PatchFit fit_patch(const WGSpace& s, const NodalField& field, int vi, int vj) {
  const NodeLines nl = node_lines(s);
  return fit_patch_impl(s, field, nl, vi, vj);
}

PatchFit fit_patch(const WGSpace& s, const NodalField& field, int node_id) {
  const TensorMesh& m = s.mesh;
  if (node_id < 0 || node_id >= m.node_count())
    throw IndexError("fit_patch: node id out of range");
  const int gi = node_id / m.node_count_y(), gj = node_id % m.node_count_y();
  if (gi % s.k != 0 || gj % s.k != 0)
    throw InvalidParameterError("fit_patch: node is not a vertex");
  return fit_patch(s, field, gi / s.k, gj / s.k);
}

std::array<double, 2> fit_gradient(const PatchFit& fit, int k, double x,
                                   double y) {
  const auto exps = monomial_exponents(k);
  const double xh = (x - fit.xc) / fit.h;
  const double yh = (y - fit.yc) / fit.h;
  double gx = 0.0, gy = 0.0;
  for (std::size_t c = 0; c < exps.size(); ++c) {
    const int px = exps[c][0], py = exps[c][1];
    if (px > 0)
      gx += fit.coef[c] * px * std::pow(xh, px - 1) * std::pow(yh, py);
    if (py > 0)
      gy += fit.coef[c] * py * std::pow(xh, px) * std::pow(yh, py - 1);
  }
  return {gx / fit.h, gy / fit.h};
}

double edge_node_ratio(double t, double t1, double t2) {
  return std::abs(t - t2) / std::abs(t1 - t2);
}

std::array<double, 4> corner_weights(double x, double y, double x0, double x1,
                                     double y0, double y1) {
  const double area = (x1 - x0) * (y1 - y0);
  return {(x1 - x) * (y1 - y) / area, (x - x0) * (y1 - y) / area,
          (x1 - x) * (y - y0) / area, (x - x0) * (y - y0) / area};
}

RecoveredGradient recover_field(const WGSpace& s, const NodalField& field) {
  const TensorMesh& m = s.mesh;
  const int k = s.k, nx = m.nx(), ny = m.ny();
  if (nx < 2 || ny < 2)
    throw InvalidMeshError("recover_field: mesh has no interior vertex");
  if (field.nxn != m.node_count_x() || field.nyn != m.node_count_y())
    throw InvalidParameterError("recover_field: field does not match node grid");
  const NodeLines nl = node_lines(s);

  std::vector<PatchFit> fits;
  fits.reserve(static_cast<std::size_t>(nx - 1) * (ny - 1));
  for (int vi = 1; vi <= nx - 1; ++vi)
    for (int vj = 1; vj <= ny - 1; ++vj)
      fits.push_back(fit_patch_impl(s, field, nl, vi, vj));
  auto fit_at = [&](int vi, int vj) -> const PatchFit& {
    return fits[static_cast<std::size_t>(vi - 1) * (ny - 1) + (vj - 1)];
  };

  // Gradient attributed to vertex (I, J), evaluated at the target point:
  // an interior vertex uses its own fit; a boundary vertex averages the
  // interior vertices of its (clipped) 3x3 vertex neighborhood.
  auto vertex_grad = [&](int I, int J, double x, double y) {
    if (I >= 1 && I <= nx - 1 && J >= 1 && J <= ny - 1)
      return fit_gradient(fit_at(I, J), k, x, y);
    double gx = 0.0, gy = 0.0;
    int n = 0;
    for (int i2 = std::max(I - 1, 1); i2 <= std::min(I + 1, nx - 1); ++i2)
      for (int j2 = std::max(J - 1, 1); j2 <= std::min(J + 1, ny - 1); ++j2) {
        const auto g = fit_gradient(fit_at(i2, j2), k, x, y);
        gx += g[0];
        gy += g[1];
        ++n;
      }
    return std::array<double, 2>{gx / n, gy / n};
  };

  RecoveredGradient out;
  out.gx.nxn = out.gy.nxn = field.nxn;
  out.gx.nyn = out.gy.nyn = field.nyn;
  out.gx.v.assign(field.v.size(), 0.0);
  out.gy.v.assign(field.v.size(), 0.0);

  for (int gi = 0; gi < field.nxn; ++gi)
    for (int gj = 0; gj < field.nyn; ++gj) {
      const double x = nl.xn[gi], y = nl.yn[gj];
      const bool vx = (gi % k == 0), vy = (gj % k == 0);
      const int I = gi / k, J = gj / k;
      std::array<double, 2> g{0.0, 0.0};
      if (vx && vy) {
        g = vertex_grad(I, J, x, y);
      } else if (vx) {
        // On a vertical mesh line between vertices (I, J) and (I, J+1).
        const double a = edge_node_ratio(y, m.ys[J], m.ys[J + 1]);
        const auto g1 = vertex_grad(I, J, x, y);
        const auto g2 = vertex_grad(I, J + 1, x, y);
        g = {a * g1[0] + (1.0 - a) * g2[0], a * g1[1] + (1.0 - a) * g2[1]};
      } else if (vy) {
        const double a = edge_node_ratio(x, m.xs[I], m.xs[I + 1]);
        const auto g1 = vertex_grad(I, J, x, y);
        const auto g2 = vertex_grad(I + 1, J, x, y);
        g = {a * g1[0] + (1.0 - a) * g2[0], a * g1[1] + (1.0 - a) * g2[1]};
      } else {
        const auto w =
            corner_weights(x, y, m.xs[I], m.xs[I + 1], m.ys[J], m.ys[J + 1]);
        const std::array<std::array<int, 2>, 4> corners{
            {{I, J}, {I + 1, J}, {I, J + 1}, {I + 1, J + 1}}};
        for (int c = 0; c < 4; ++c) {
          const auto gc = vertex_grad(corners[c][0], corners[c][1], x, y);
          g[0] += w[c] * gc[0];
          g[1] += w[c] * gc[1];
        }
      }
      out.gx.at(gi, gj) = g[0];
      out.gy.at(gi, gj) = g[1];
    }
  return out;
}

RecoveredGradient recover(const WGSpace& s, const WeakFunction& u,
                          NodalAverage avg) {
  return recover_field(s, reformulate(s, u, avg));
}

RecoveredGradient recover(const WGSpace& s, const WeakFunction& u) {
  return recover(s, u, default_average(s.k));
}

RecoveredGradient recover_exact(const WGSpace& s, const ContinuousField& u) {
  return recover(s, interpolate(s, u));
}

void dump_recovered(const WGSpace& s, const RecoveredGradient& g,
                    std::ostream& os) {
  const NodeLines nl = node_lines(s);
  char bx[64], by[64];
  for (int gi = 0; gi < g.gx.nxn; ++gi)
    for (int gj = 0; gj < g.gx.nyn; ++gj) {
      std::snprintf(bx, sizeof bx, "%.17g", g.gx.at(gi, gj));
      std::snprintf(by, sizeof by, "%.17g", g.gy.at(gi, gj));
      char cx[64], cy[64];
      std::snprintf(cx, sizeof cx, "%.17g", nl.xn[gi]);
      std::snprintf(cy, sizeof cy, "%.17g", nl.yn[gj]);
      os << s.mesh.node_id(gi, gj) << ' ' << cx << ' ' << cy << ' ' << bx << ' '
         << by << '\n';
    }
}

}  // namespace wg
