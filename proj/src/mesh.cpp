#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "wg/exceptions.hpp"

namespace wg {

namespace {

void validate(const TensorMesh& m) {
  if (m.k < 1)
    throw UnsupportedDegreeError("mesh degree must be >= 1, got " +
                                 std::to_string(m.k));
  if (m.nx() < 2 || m.ny() < 2)
    throw InvalidMeshError("mesh must have at least 2 cells per direction");
  for (int i = 0; i < m.nx(); ++i)
    if (!(m.xs[i] < m.xs[i + 1]))
      throw InvalidMeshError("x breakpoints must be strictly ascending");
  for (int j = 0; j < m.ny(); ++j)
    if (!(m.ys[j] < m.ys[j + 1]))
      throw InvalidMeshError("y breakpoints must be strictly ascending");
}

}  // namespace

double TensorMesh::h() const {
  double best = 0.0;
  for (int i = 0; i < nx(); ++i)
    for (int j = 0; j < ny(); ++j)
      best = std::max(best, std::hypot(xs[i + 1] - xs[i], ys[j + 1] - ys[j]));
  return best;
}

void TensorMesh::elem_box(int e, double& x0, double& x1, double& y0,
                          double& y1) const {
  if (e < 0 || e >= nelem())
    throw IndexError("element id " + std::to_string(e) + " out of range");
  const int ix = e % nx(), iy = e / nx();
  x0 = xs[ix];
  x1 = xs[ix + 1];
  y0 = ys[iy];
  y1 = ys[iy + 1];
}

bool TensorMesh::edge_is_boundary(int g) const {
  if (g < 0 || g >= nedge())
    throw IndexError("edge id " + std::to_string(g) + " out of range");
  if (g < nvedge()) {
    const int i = g / ny();
    return i == 0 || i == nx();
  }
  const int j = (g - nvedge()) / nx();
  return j == 0 || j == ny();
}

std::array<int, 4> TensorMesh::elem_edges(int e) const {
  if (e < 0 || e >= nelem())
    throw IndexError("element id " + std::to_string(e) + " out of range");
  const int ix = e % nx(), iy = e / nx();
  return {vedge_id(ix, iy), vedge_id(ix + 1, iy), hedge_id(ix, iy),
          hedge_id(ix, iy + 1)};
}

TensorMesh build_uniform(int n, int k) {
  if (n < 2)
    throw InvalidMeshError("uniform mesh needs n >= 2, got " + std::to_string(n));
  TensorMesh m;
  m.k = k;
  m.xs.resize(n + 1);
  for (int i = 0; i <= n; ++i) m.xs[i] = static_cast<double>(i) / n;
  m.ys = m.xs;
  validate(m);
  return m;
}

TensorMesh build_perturbed(int level, int k) {
  if (level < 0)
    throw InvalidParameterError("perturbed mesh level must be >= 0, got " +
                                std::to_string(level));
  TensorMesh m;
  m.k = k;
  m.xs = {0.0, 0.254, 0.5, 0.746, 1.0};
  m.ys = {0.0, 0.29, 0.507, 0.79, 1.0};
  validate(m);
  for (int l = 0; l < level; ++l) m = refine(m);
  return m;
}

TensorMesh refine(const TensorMesh& m) {
  validate(m);
  auto split = [](const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(2 * b.size() - 1);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      out.push_back(b[i]);
      out.push_back(0.5 * (b[i] + b[i + 1]));
    }
    out.push_back(b.back());
    return out;
  };
  TensorMesh r;
  r.k = m.k;
  r.xs = split(m.xs);
  r.ys = split(m.ys);
  return r;
}

std::vector<double> node_line(const std::vector<double>& breaks,
                              const LobattoPointSet& ps) {
  const int k = ps.degree;
  std::vector<double> nodes;
  nodes.reserve((breaks.size() - 1) * k + 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    for (int a = 0; a < k; ++a)
      nodes.push_back(affine(breaks[i], breaks[i + 1], ps.points[a]));
  nodes.push_back(breaks.back());
  return nodes;
}

std::vector<NodeIndex> classify_nodes(const TensorMesh& m) {
  validate(m);
  const int k = m.k, nx = m.nx(), ny = m.ny();
  const LobattoPointSet lob = lobatto_points(k);
  const std::vector<double> xn = node_line(m.xs, lob);
  const std::vector<double> yn = node_line(m.ys, lob);

  std::vector<NodeIndex> out(m.node_count());
  for (int gi = 0; gi < m.node_count_x(); ++gi) {
    for (int gj = 0; gj < m.node_count_y(); ++gj) {
      NodeIndex nd;
      nd.id = m.node_id(gi, gj);
      nd.gi = gi;
      nd.gj = gj;
      nd.x = xn[gi];
      nd.y = yn[gj];
      const bool vx = (gi % k == 0), vy = (gj % k == 0);
      const int i = gi / k, j = gj / k;
      if (vx && vy) {
        nd.kind = (i == 0 || i == nx || j == 0 || j == ny)
                      ? NodeKind::BoundaryVertex
                      : NodeKind::InteriorVertex;
        for (int dj = -1; dj <= 0; ++dj)
          for (int di = -1; di <= 0; ++di) {
            const int ii = i + di, jj = j + dj;
            if (ii >= 0 && ii < nx && jj >= 0 && jj < ny)
              nd.elements.push_back(m.elem_id(ii, jj));
          }
        if (j > 0) nd.edges.push_back(m.vedge_id(i, j - 1));
        if (j < ny) nd.edges.push_back(m.vedge_id(i, j));
        if (i > 0) nd.edges.push_back(m.hedge_id(i - 1, j));
        if (i < nx) nd.edges.push_back(m.hedge_id(i, j));
      } else if (vx) {
        // On the vertical edge x = xs[i], strictly inside cell j in y.
        nd.kind = NodeKind::EdgeNode;
        nd.edges.push_back(m.vedge_id(i, j));
        if (i > 0) nd.elements.push_back(m.elem_id(i - 1, j));
        if (i < nx) nd.elements.push_back(m.elem_id(i, j));
      } else if (vy) {
        nd.kind = NodeKind::EdgeNode;
        nd.edges.push_back(m.hedge_id(i, j));
        if (j > 0) nd.elements.push_back(m.elem_id(i, j - 1));
        if (j < ny) nd.elements.push_back(m.elem_id(i, j));
      } else {
        nd.kind = NodeKind::InternalNode;
        nd.elements.push_back(m.elem_id(i, j));
      }
      std::sort(nd.elements.begin(), nd.elements.end());
      std::sort(nd.edges.begin(), nd.edges.end());
      out[nd.id] = std::move(nd);
    }
  }
  return out;
}

VertexPatch vertex_patch(const TensorMesh& m, const std::vector<NodeIndex>& nodes,
                         int v) {
  if (v < 0 || v >= m.node_count())
    throw IndexError("node id " + std::to_string(v) + " out of range");
  const NodeIndex& nd = nodes[v];
  if (nd.kind != NodeKind::InteriorVertex && nd.kind != NodeKind::BoundaryVertex)
    throw InvalidParameterError("vertex_patch: node " + std::to_string(v) +
                                " is not a vertex");
  const int k = m.k, nx = m.nx(), ny = m.ny();
  const int i = nd.gi / k, j = nd.gj / k;
  VertexPatch p;
  p.center = v;
  for (int jj = std::max(j - 1, 0); jj <= std::min(j, ny - 1); ++jj)
    for (int ii = std::max(i - 1, 0); ii <= std::min(i, nx - 1); ++ii)
      p.elements.push_back(m.elem_id(ii, jj));
  std::sort(p.elements.begin(), p.elements.end());
  const int gi0 = k * std::max(i - 1, 0), gi1 = k * std::min(i + 1, nx);
  const int gj0 = k * std::max(j - 1, 0), gj1 = k * std::min(j + 1, ny);
  for (int gi = gi0; gi <= gi1; ++gi)
    for (int gj = gj0; gj <= gj1; ++gj) p.nodes.push_back(m.node_id(gi, gj));
  for (int ii = std::max(i - 1, 1); ii <= std::min(i + 1, nx - 1); ++ii)
    for (int jj = std::max(j - 1, 1); jj <= std::min(j + 1, ny - 1); ++jj)
      p.interior_vertices.push_back(m.node_id(ii * k, jj * k));
  return p;
}

VertexPatch vertex_patch(const TensorMesh& m, int v) {
  return vertex_patch(m, classify_nodes(m), v);
}

int find_element(const TensorMesh& m, double x, double y) {
  auto cell = [](const std::vector<double>& b, double t) {
    const int n = static_cast<int>(b.size()) - 1;
    auto it = std::upper_bound(b.begin(), b.end(), t);
    int i = static_cast<int>(it - b.begin()) - 1;
    return std::clamp(i, 0, n - 1);
  };
  return m.elem_id(cell(m.xs, x), cell(m.ys, y));
}

void dump_mesh(const TensorMesh& m, std::ostream& os) {
  char buf[64];
  os << "X\n";
  for (double v : m.xs) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << '\n';
  }
  os << "Y\n";
  for (double v : m.ys) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << '\n';
  }
}

}  // namespace wg
