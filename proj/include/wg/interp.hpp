#pragma once
#include <array>
#include <functional>

#include "wg/wg_core.hpp"

namespace wg {

// A continuous function with an optional analytic gradient.
struct ContinuousField {
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> gradient;  // may be null
};

// Nodal interpolant: interior coefficients sample u at the element's
// tensor Lobatto nodes, trace coefficients sample u at the edge's
// Lobatto nodes.
WeakFunction interpolate(const WGSpace& s, const ContinuousField& u);

// Largest interior-trace mismatch |v_0|_edge - v_b| over all edges,
// sampled at the assembly quadrature points of each edge.
double max_trace_jump(const WGSpace& s, const WeakFunction& v);

// True when max_trace_jump(s, v) <= 1e-11.
bool trace_jump_is_zero(const WGSpace& s, const WeakFunction& v);

}  // namespace wg
