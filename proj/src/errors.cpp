#include "wg/errors.hpp"

#include <cmath>
#include <limits>

#include "wg/exceptions.hpp"

namespace wg {

double supercloseness_error(const WGSpace& s, const ContinuousField& u,
                            const WeakFunction& u_h) {
  if (u_h.space != &s || u_h.coef.size() != s.ndof)
    throw InvalidParameterError(
        "supercloseness_error: function does not match space");
  const WeakFunction iu = interpolate(s, u);
  WeakFunction d{&s, u_h.coef - iu.coef};
  return energy_norm(s, d);
}

double recovered_gradient_error(const WGSpace& s, const GradientField& grad_u,
                                const RecoveredGradient& g, int quad_points) {
  if (!grad_u)
    throw InvalidParameterError("recovered_gradient_error: missing gradient");
  const TensorMesh& m = s.mesh;
  const int k = s.k;
  if (g.gx.nxn != m.node_count_x() || g.gx.nyn != m.node_count_y())
    throw InvalidParameterError(
        "recovered_gradient_error: field does not match node grid");
  const int nq = quad_points > 0 ? quad_points : k + 5;
  const QuadratureRule q = gauss_rule(nq);

  DenseMatrix lag(nq, k + 1);
  for (int qi = 0; qi < nq; ++qi)
    for (int a = 0; a <= k; ++a)
      lag(qi, a) = lagrange_eval(s.lob, a, q.points[qi]);

  double total = 0.0;
  DenseMatrix gxl(k + 1, k + 1), gyl(k + 1, k + 1);
  for (int e = 0; e < m.nelem(); ++e) {
    const int ix = e % m.nx(), iy = e / m.nx();
    double x0, x1, y0, y1;
    m.elem_box(e, x0, x1, y0, y1);
    const double hx = x1 - x0, hy = y1 - y0;
    for (int ax = 0; ax <= k; ++ax)
      for (int ay = 0; ay <= k; ++ay) {
        gxl(ax, ay) = g.gx.at(ix * k + ax, iy * k + ay);
        gyl(ax, ay) = g.gy.at(ix * k + ax, iy * k + ay);
      }
    const DenseMatrix gxq = lag * gxl * lag.transpose();
    const DenseMatrix gyq = lag * gyl * lag.transpose();
    double cell = 0.0;
    for (int qx = 0; qx < nq; ++qx) {
      const double x = x0 + (q.points[qx] + 1.0) * hx / 2.0;
      for (int qy = 0; qy < nq; ++qy) {
        const double y = y0 + (q.points[qy] + 1.0) * hy / 2.0;
        const auto gu = grad_u(x, y);
        const double dx = gxq(qx, qy) - gu[0];
        const double dy = gyq(qx, qy) - gu[1];
        cell += q.weights[qx] * q.weights[qy] * (dx * dx + dy * dy);
      }
    }
    total += (hx / 2.0) * (hy / 2.0) * cell;
  }
  return std::sqrt(total);
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out;
  if (errors.size() < 2) return out;
  out.reserve(errors.size() - 1);
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i - 1] > 0.0 && errors[i] > 0.0)
      out.push_back(std::log2(errors[i - 1] / errors[i]));
    else
      out.push_back(nan);
  }
  return out;
}

}  // namespace wg
