#pragma once
#include <array>
#include <functional>
#include <vector>

#include "wg/interp.hpp"
#include "wg/ppr.hpp"
#include "wg/wg_core.hpp"

namespace wg {

using GradientField = std::function<std::array<double, 2>(double, double)>;

// Energy norm of u_h minus the nodal interpolant of u.
double supercloseness_error(const WGSpace& s, const ContinuousField& u,
                            const WeakFunction& u_h);

// L2 distance between the recovered gradient (evaluated as a piecewise
// Q_k nodal field) and an analytic gradient; quad_points = 0 selects the
// default k+5 rule per direction.
double recovered_gradient_error(const WGSpace& s, const GradientField& grad_u,
                                const RecoveredGradient& g, int quad_points = 0);

// Observed orders log2(e[i-1] / e[i]); NaN marks undefined entries
// (non-positive errors).
std::vector<double> observed_orders(const std::vector<double>& errors);

struct LevelResult {
  int n = 0;          // cells per direction
  double h = 0.0;     // mesh size
  double energy_err = 0.0;
  double grad_err = 0.0;
};

struct ConvergenceReport {
  double alpha = 0.0;
  std::vector<LevelResult> levels;
  std::vector<double> energy_orders;  // size levels-1
  std::vector<double> grad_orders;
};

}  // namespace wg
