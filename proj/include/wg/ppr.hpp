#pragma once
#include <array>
#include <iosfwd>
#include <vector>

#include "wg/interp.hpp"
#include "wg/wg_core.hpp"

namespace wg {

// How coincident discrete values are merged into one value per node.
enum class NodalAverage {
  AllValues,    // mean of every interior value and every edge-trace value
  InteriorOnly  // mean of the interior values only
};

// Scheme used by default for a given degree.
NodalAverage default_average(int k);

// One value per Lagrange node of the mesh's node grid.
struct NodalField {
  int nxn = 0, nyn = 0;
  std::vector<double> v;

  double& at(int gi, int gj) { return v[gi * nyn + gj]; }
  double at(int gi, int gj) const { return v[gi * nyn + gj]; }
};

// Merge the multivalued discrete function into a single-valued nodal field.
NodalField reformulate(const WGSpace& s, const WeakFunction& u, NodalAverage avg);
NodalField reformulate(const WGSpace& s, const WeakFunction& u);

// Scaled monomial basis of P_{k+1}: degree-lex exponents
// {1, x, y, x^2, xy, y^2, ...}, m = (k+2)(k+3)/2 terms.
int monomial_count(int k);
std::vector<std::array<int, 2>> monomial_exponents(int k);

// Least-squares fit of p in P_{k+1} over the (2k+1)^2 nodes around an
// interior vertex, in coordinates centered at the vertex and scaled by the
// global mesh size h (the fit is scale-invariant; gradients are unscaled
// by 1/h on evaluation).
struct PatchFit {
  int vi = 0, vj = 0;      // vertex cell-grid indices
  double xc = 0.0, yc = 0.0;
  double h = 1.0;
  Vector coef;             // monomial_count(k) entries
};

PatchFit fit_patch(const WGSpace& s, const NodalField& field, int vi, int vj);
PatchFit fit_patch(const WGSpace& s, const NodalField& field, int node_id);

// Gradient of the fitted polynomial at a physical point.
std::array<double, 2> fit_gradient(const PatchFit& fit, int k, double x,
                                   double y);

struct RecoveredGradient {
  NodalField gx, gy;
};

// Convex weight of the first endpoint for a node between t1 and t2.
double edge_node_ratio(double t, double t1, double t2);

// Bilinear (opposite-area) weights of the four cell corners
// {(x0,y0), (x1,y0), (x0,y1), (x1,y1)} for a point inside the cell.
std::array<double, 4> corner_weights(double x, double y, double x0, double x1,
                                     double y0, double y1);

// Gradient recovery from a nodal field: interior vertices take their own
// fit's gradient; boundary vertices average the fits of the interior
// vertices in their 3x3 vertex neighborhood, evaluated at the target;
// edge nodes blend the two endpoint vertices; internal nodes blend the
// four cell corners. Wherever a referenced corner vertex lies on the
// boundary, its averaged stencil evaluated at the target substitutes for
// the missing fit.
RecoveredGradient recover_field(const WGSpace& s, const NodalField& field);

RecoveredGradient recover(const WGSpace& s, const WeakFunction& u,
                          NodalAverage avg);
RecoveredGradient recover(const WGSpace& s, const WeakFunction& u);

// recover(interpolate(u)) with the default averaging.
RecoveredGradient recover_exact(const WGSpace& s, const ContinuousField& u);

// Text dump, one line per node: node-id, x, y, Gx, Gy (17 significant digits).
void dump_recovered(const WGSpace& s, const RecoveredGradient& g,
                    std::ostream& os);

}  // namespace wg
