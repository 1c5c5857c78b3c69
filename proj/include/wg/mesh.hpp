#pragma once
#include <array>
#include <iosfwd>
#include <vector>

#include "wg/poly.hpp"

namespace wg {

// Affine map of [-1,1] onto [a,b]; exact at the endpoints.
inline double affine(double a, double b, double t) {
  if (t == -1.0) return a;
  if (t == 1.0) return b;
  return a + 0.5 * (t + 1.0) * (b - a);
}

// Tensor-product rectangular mesh together with the polynomial degree k
// carried by the discrete space. Immutable once built.
//
// Numbering:
//   element (ix, iy)        -> e = iy*nx + ix
//   vertical edge (i, j)    -> i*ny + j           (x = xs[i], ys[j]..ys[j+1])
//   horizontal edge (i, j)  -> nvedge + j*nx + i  (y = ys[j], xs[i]..xs[i+1])
// Edges carry a global orientation: vertical edges ascend in y, horizontal
// edges ascend in x.
struct TensorMesh {
  std::vector<double> xs;  // ascending breakpoints, size nx+1
  std::vector<double> ys;  // ascending breakpoints, size ny+1
  int k = 1;

  int nx() const { return static_cast<int>(xs.size()) - 1; }
  int ny() const { return static_cast<int>(ys.size()) - 1; }
  int nelem() const { return nx() * ny(); }
  int nvedge() const { return (nx() + 1) * ny(); }
  int nhedge() const { return nx() * (ny() + 1); }
  int nedge() const { return nvedge() + nhedge(); }

  // Mesh size: the largest element diagonal.
  double h() const;

  int elem_id(int ix, int iy) const { return iy * nx() + ix; }
  void elem_box(int e, double& x0, double& x1, double& y0, double& y1) const;

  int vedge_id(int i, int j) const { return i * ny() + j; }
  int hedge_id(int i, int j) const { return nvedge() + j * nx() + i; }
  bool edge_is_boundary(int g) const;

  // Incident edges of an element: left, right, bottom, top.
  std::array<int, 4> elem_edges(int e) const;

  // Lagrange node grid of the continuous reconstruction space:
  // (nx*k+1) x (ny*k+1) tensor nodes, id = gi*node_count_y() + gj.
  int node_count_x() const { return nx() * k + 1; }
  int node_count_y() const { return ny() * k + 1; }
  int node_count() const { return node_count_x() * node_count_y(); }
  int node_id(int gi, int gj) const { return gi * node_count_y() + gj; }
};

// Uniform n x n mesh of the unit square; n >= 2.
TensorMesh build_uniform(int n, int k);

// Fixed 4 x 4 nonuniform base mesh of the unit square, refined `level`
// times by edge midpoint insertion; level >= 0 gives N = 4*2^level.
TensorMesh build_perturbed(int level, int k);

// One midpoint-insertion refinement.
TensorMesh refine(const TensorMesh& m);

// 1-D Lagrange node coordinates over the breakpoints: per cell the mapped
// Lobatto nodes excluding the right endpoint, plus the final breakpoint.
// Cell endpoints are reproduced exactly.
std::vector<double> node_line(const std::vector<double>& breaks,
                              const LobattoPointSet& ps);

enum class NodeKind { InteriorVertex, BoundaryVertex, EdgeNode, InternalNode };

struct NodeIndex {
  int id = 0;
  int gi = 0, gj = 0;  // tensor grid indices
  double x = 0.0, y = 0.0;
  NodeKind kind = NodeKind::InternalNode;
  std::vector<int> elements;  // incident elements, ascending ids
  std::vector<int> edges;     // incident edges, ascending ids
};

// Classification of every Lagrange node, indexed by node id.
std::vector<NodeIndex> classify_nodes(const TensorMesh& m);

// Closure of the 2x2 element patch around a vertex (clipped at the
// boundary), plus the interior vertices inside its 3x3 vertex neighborhood.
struct VertexPatch {
  int center = 0;                      // node id of the vertex
  std::vector<int> elements;           // patch elements, ascending
  std::vector<int> nodes;              // all Lagrange nodes in the closure
  std::vector<int> interior_vertices;  // interior-vertex node ids, ascending
};

VertexPatch vertex_patch(const TensorMesh& m, const std::vector<NodeIndex>& nodes,
                         int v);
VertexPatch vertex_patch(const TensorMesh& m, int v);

// Element containing (x, y); points on shared edges resolve to the
// right/top neighbor, points outside clamp to the nearest element.
int find_element(const TensorMesh& m, double x, double y);

// Text dump: "X" then the x breakpoints one per line, then "Y" and the y
// breakpoints (17 significant digits).
void dump_mesh(const TensorMesh& m, std::ostream& os);

}  // namespace wg
