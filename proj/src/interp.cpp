#include "wg/interp.hpp"

#include <algorithm>
#include <cmath>

#include "wg/exceptions.hpp"

namespace wg {

WeakFunction interpolate(const WGSpace& s, const ContinuousField& u) {
  if (!u.value) throw InvalidParameterError("interpolate: field has no value");
  WeakFunction v = zero_function(s);
  const TensorMesh& m = s.mesh;
  for (int e = 0; e < m.nelem(); ++e) {
    double x0, x1, y0, y1;
    m.elem_box(e, x0, x1, y0, y1);
    for (int ay = 0; ay <= s.k; ++ay) {
      const double y = affine(y0, y1, s.lob.points[ay]);
      for (int ax = 0; ax <= s.k; ++ax)
        v.coef[s.interior_dof(e, ax, ay)] =
            u.value(affine(x0, x1, s.lob.points[ax]), y);
    }
  }
  // Vertical edges: trace nodes ascend in y; horizontal: ascend in x.
  for (int i = 0; i <= m.nx(); ++i)
    for (int j = 0; j < m.ny(); ++j) {
      const int g = m.vedge_id(i, j);
      for (int t = 0; t <= s.k; ++t)
        v.coef[s.trace_dof(g, t)] =
            u.value(m.xs[i], affine(m.ys[j], m.ys[j + 1], s.lob.points[t]));
    }
  for (int j = 0; j <= m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      const int g = m.hedge_id(i, j);
      for (int t = 0; t <= s.k; ++t)
        v.coef[s.trace_dof(g, t)] =
            u.value(affine(m.xs[i], m.xs[i + 1], s.lob.points[t]), m.ys[j]);
    }
  return v;
}

double max_trace_jump(const WGSpace& s, const WeakFunction& v) {
  if (v.space != &s || v.coef.size() != s.ndof)
    throw InvalidParameterError("max_trace_jump: function does not match space");
  const TensorMesh& m = s.mesh;
  const int nq = static_cast<int>(s.quad.points.size());
  double worst = 0.0;

  // v_0 restricted to a side, evaluated at the side's quadrature points.
  auto side_value = [&](int e, int side, int q) {
    double val = 0.0;
    for (int t = 0; t <= s.k; ++t) {
      int a;
      switch (side) {
        case 0: a = t * (s.k + 1); break;
        case 1: a = t * (s.k + 1) + s.k; break;
        case 2: a = t; break;
        default: a = s.k * (s.k + 1) + t;
      }
      val += v.coef[e * s.nloc_int + a] * s.lag_q(q, t);
    }
    return val;
  };
  auto trace_value = [&](int g, int q) {
    double val = 0.0;
    for (int t = 0; t <= s.k; ++t)
      val += v.coef[s.trace_dof(g, t)] * s.lag_q(q, t);
    return val;
  };

  for (int i = 0; i <= m.nx(); ++i)
    for (int j = 0; j < m.ny(); ++j) {
      const int g = m.vedge_id(i, j);
      for (int q = 0; q < nq; ++q) {
        const double tv = trace_value(g, q);
        if (i > 0)
          worst = std::max(worst,
                           std::abs(side_value(m.elem_id(i - 1, j), 1, q) - tv));
        if (i < m.nx())
          worst =
              std::max(worst, std::abs(side_value(m.elem_id(i, j), 0, q) - tv));
      }
    }
  for (int j = 0; j <= m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      const int g = m.hedge_id(i, j);
      for (int q = 0; q < nq; ++q) {
        const double tv = trace_value(g, q);
        if (j > 0)
          worst = std::max(worst,
                           std::abs(side_value(m.elem_id(i, j - 1), 3, q) - tv));
        if (j < m.ny())
          worst =
              std::max(worst, std::abs(side_value(m.elem_id(i, j), 2, q) - tv));
      }
    }
  return worst;
}

bool trace_jump_is_zero(const WGSpace& s, const WeakFunction& v) {
  return max_trace_jump(s, v) <= 1e-11;
}

}  // namespace wg
