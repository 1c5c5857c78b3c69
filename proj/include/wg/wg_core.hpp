#pragma once
#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "wg/linalg.hpp"
#include "wg/mesh.hpp"
#include "wg/poly.hpp"

namespace wg {

using ScalarField = std::function<double(double, double)>;

// Scale used inside the h^{-alpha} jump penalty.
enum class StabilizerScale {
  ElementDiagonal,  // per-element diagonal length
  GlobalMax         // largest diagonal over the mesh
};

// Element-local operators for a cell of a given size:
//   B1, B2  moment maps from local dofs to the two gradient-basis components
//   D1, D2  diagonal Gram entries of the gradient basis
//   K       local bilinear form (gradient part plus jump penalty)
//   Kstab   the jump-penalty part alone
struct LocalOperators {
  DenseMatrix B1, B2;
  Vector D1, D2;
  DenseMatrix K, Kstab;
};

// Discrete space: Q_k interiors, P_k edge traces, Lagrange bases at
// Gauss-Lobatto nodes. Local dof order within an element: the (k+1)^2
// interior nodes (ax fast, ay slow), then the traces of the left, right,
// bottom, top edges, k+1 each, in the edge's global orientation.
class WGSpace {
 public:
  TensorMesh mesh;
  int k = 1;
  double alpha = 1.0;
  StabilizerScale hscale = StabilizerScale::ElementDiagonal;

  LobattoPointSet lob;
  QuadratureRule quad;  // k+3 points, used for assembly
  WGradBasis wbasis;

  int nloc_int = 0;    // (k+1)^2
  int nloc_trace = 0;  // k+1
  int nloc = 0;        // nloc_int + 4*nloc_trace

  int ndof = 0;      // (k+1)^2 * nelem + (k+1) * nedge
  int nreduced = 0;  // dofs after eliminating boundary traces
  std::vector<bool> boundary_dof;
  std::vector<int> reduced_of_dof;  // -1 for eliminated dofs
  std::vector<int> dof_of_reduced;

  // Reference tables over the k+3 point rule (nq rows):
  DenseMatrix lag_q;    // l_a at quadrature points
  DenseMatrix mass1d;   // integral of l_a l_b over [-1,1]
  DenseMatrix int_lp;   // integral of l_a P_j over [-1,1]
  DenseMatrix int_ldp;  // integral of l_a P_j' over [-1,1]
  Vector p_at_m1, p_at_p1;  // P_j(-1), P_j(+1)

  int interior_dof(int e, int ax, int ay) const {
    return e * nloc_int + ay * (k + 1) + ax;
  }
  int trace_dof(int g, int t) const {
    return mesh.nelem() * nloc_int + g * nloc_trace + t;
  }

  double penalty_factor(double hx, double hy) const;  // h_T^{-alpha}

  // Local operators for element e, cached by cell size.
  const LocalOperators& local_ops(int e) const;

 private:
  friend WGSpace make_space(const TensorMesh&, double, StabilizerScale);
  mutable std::map<std::pair<double, double>, LocalOperators> cache_;
  double hglobal_ = 0.0;
};

WGSpace make_space(const TensorMesh& mesh, double alpha,
                   StabilizerScale hs = StabilizerScale::ElementDiagonal);

// A discrete function: one coefficient per dof of `space` (which must
// outlive the function). Interior coefficients are the values of v_0 at
// the element's Lobatto nodes; trace coefficients the values of v_b at
// the edge's Lobatto nodes.
struct WeakFunction {
  const WGSpace* space = nullptr;
  Vector coef;
};

WeakFunction zero_function(const WGSpace& s);

// Local coefficient gather for one element (interior block then traces).
Vector local_coeffs(const WGSpace& s, const Vector& coef, int e);

// Coefficients of the discrete weak gradient of a local function on
// element e, in the two components of the gradient basis.
std::pair<Vector, Vector> weak_gradient_local(const WGSpace& s, int e,
                                              const Vector& local);

// Evaluate a weak-gradient coefficient pair at a physical point of element e.
std::array<double, 2> weak_gradient_value(const WGSpace& s, int e,
                                          const Vector& c1, const Vector& c2,
                                          double x, double y);

// Stiffness matrix with boundary-trace dofs eliminated (symmetric, SPD).
SparseSymMatrix assemble(const WGSpace& s);
// Full matrix over all dofs (singular: boundary rows are free).
SparseSymMatrix assemble_unreduced(const WGSpace& s);

Vector load_vector(const WGSpace& s, const ScalarField& f);

Vector reduce_vector(const WGSpace& s, const Vector& full);
Vector expand_vector(const WGSpace& s, const Vector& reduced);

// Solve the discrete problem with homogeneous Dirichlet data.
WeakFunction solve_wg(const WGSpace& s, const ScalarField& f);

// Solve with prescribed boundary traces: entries of `boundary_values` at
// boundary-trace dofs are imposed, all other entries are ignored.
WeakFunction solve_with_boundary(const WGSpace& s, const ScalarField& f,
                                 const Vector& boundary_values);

// Energy norm sqrt(a_s(v, v)) and its {gradient^2, penalty^2} split.
double energy_norm(const WGSpace& s, const WeakFunction& v);
std::array<double, 2> energy_parts(const WGSpace& s, const WeakFunction& v);

// Pointwise interior value / gradient of v_0 on element e.
double v0_value(const WGSpace& s, const WeakFunction& v, int e, double x,
                double y);
std::array<double, 2> v0_gradient(const WGSpace& s, const WeakFunction& v,
                                  int e, double x, double y);

// Text dump, one line per dof:
//   dof-id kind(I|E) element-or-edge-id local-index value
void dump_solution(const WGSpace& s, const WeakFunction& v, std::ostream& os);

}  // namespace wg
