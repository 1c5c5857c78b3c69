#pragma once
#include <vector>

namespace wg {

// Legendre polynomial P_n and its derivative on [-1,1].
double legendre_eval(int n, double x);
double legendre_deriv(int n, double x);

// Gauss-Lobatto nodes of degree k: the k+1 ascending zeros of
// (1-x^2) P_k'(x), symmetric about 0, endpoints exactly -1 and 1.
struct LobattoPointSet {
  int degree = 0;
  std::vector<double> points;
};

LobattoPointSet lobatto_points(int k);  // k >= 1

// Lagrange basis l_i over ps.points, and its derivative.
double lagrange_eval(const LobattoPointSet& ps, int i, double x);
double lagrange_deriv(const LobattoPointSet& ps, int i, double x);

// Gauss-Legendre rule on [-1,1]: positive weights summing to 2,
// exact for polynomials of degree <= 2n-1.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

QuadratureRule gauss_rule(int n);  // 1 <= n <= 20

// Basis of the vector space [Q_{k-1,k}, Q_{k,k-1}]^t as tensor products
// of Legendre polynomials on the reference square [-1,1]^2; the element
// Gram matrix of each component is diagonal.
struct WGradBasis {
  int degree = 0;  // k

  int component_dim() const { return degree * (degree + 1); }

  // First component spans Q_{k-1,k}: x-degree i <= k-1, y-degree j <= k,
  // index a = i*(k+1) + j.
  int xdeg1(int a) const { return a / (degree + 1); }
  int ydeg1(int a) const { return a % (degree + 1); }
  // Second component spans Q_{k,k-1}: x-degree i <= k, y-degree j <= k-1,
  // index a = i*k + j.
  int xdeg2(int a) const { return a / degree; }
  int ydeg2(int a) const { return a % degree; }

  double eval1(int a, double tx, double ty) const;
  double eval2(int a, double tx, double ty) const;

  // Element inner product (q_a, q_a) on a physical cell of size hx x hy.
  double gram_diag1(int a, double hx, double hy) const;
  double gram_diag2(int a, double hx, double hy) const;
};

WGradBasis wgrad_basis(int k);  // k >= 1

}  // namespace wg
