#pragma once
#include <string>

#include "wg/errors.hpp"
#include "wg/interp.hpp"

namespace wg {

// A Poisson benchmark: -laplace(u) = f on the unit square, u = 0 on the
// boundary, with a reference solution and gradient.
struct Problem {
  std::string name;
  ScalarField f;
  ScalarField u;
  GradientField grad_u;

  ContinuousField field() const { return ContinuousField{u, grad_u}; }
};

// u = sin(pi x) sin(pi y), f = 2 pi^2 u.
Problem sine_problem();

// f = 1; the reference solution is the separable series truncated to
// `terms` terms (termwise differentiated for the gradient). The truncated
// reference is harmonic up to the same f but carries O(1e-6) nonzero
// boundary values at the default truncation.
Problem unit_load_problem(int terms = 50);

}  // namespace wg
