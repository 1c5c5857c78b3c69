#include "wg/problems.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "wg/exceptions.hpp"

namespace wg {

Problem sine_problem() {
  const double pi = std::acos(-1.0);
  Problem p;
  p.name = "sine";
  p.u = [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  p.f = [pi](double x, double y) {
    return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y);
  };
  p.grad_u = [pi](double x, double y) {
    return std::array<double, 2>{pi * std::cos(pi * x) * std::sin(pi * y),
                                 pi * std::sin(pi * x) * std::cos(pi * y)};
  };
  return p;
}

Problem unit_load_problem(int terms) {
  if (terms < 1)
    throw InvalidParameterError("unit_load_problem: terms must be >= 1, got " +
                                std::to_string(terms));
  const double pi = std::acos(-1.0);
  std::vector<double> lam(terms), c(terms);
  for (int i = 0; i < terms; ++i) {
    lam[i] = (2.0 * i + 1.0) * pi;
    const double m = 2.0 * i + 1.0;
    c[i] = 1.0 / (m * m * m * (1.0 + std::exp(-lam[i])));
  }
  const double scal = 2.0 / (pi * pi * pi);

  Problem p;
  p.name = "unit-load";
  p.f = [](double, double) { return 1.0; };
  p.u = [lam, c, scal](double x, double y) {
    double s = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      const double l = lam[i];
      s += c[i] * ((std::exp(-l * y) + std::exp(-l * (1.0 - y))) * std::sin(l * x) +
                   (std::exp(-l * x) + std::exp(-l * (1.0 - x))) * std::sin(l * y));
    }
    return (x * (1.0 - x) + y * (1.0 - y)) / 4.0 - scal * s;
  };
  p.grad_u = [lam, c, scal](double x, double y) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      const double l = lam[i];
      const double ey = std::exp(-l * y) + std::exp(-l * (1.0 - y));
      const double ex = std::exp(-l * x) + std::exp(-l * (1.0 - x));
      const double dex = -l * std::exp(-l * x) + l * std::exp(-l * (1.0 - x));
      const double dey = -l * std::exp(-l * y) + l * std::exp(-l * (1.0 - y));
      sx += c[i] * (ey * l * std::cos(l * x) + dex * std::sin(l * y));
      sy += c[i] * (dey * std::sin(l * x) + ex * l * std::cos(l * y));
    }
    return std::array<double, 2>{(1.0 - 2.0 * x) / 4.0 - scal * sx,
                                 (1.0 - 2.0 * y) / 4.0 - scal * sy};
  };
  return p;
}

}  // namespace wg
