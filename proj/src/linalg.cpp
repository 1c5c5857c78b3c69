#include "wg/linalg.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "wg/exceptions.hpp"

namespace wg {

Vector least_squares(const DenseMatrix& A, const Vector& b, int tag) {
  if (A.rows() < A.cols())
    throw InvalidParameterError("least_squares: need rows >= cols, got " +
                                std::to_string(A.rows()) + " x " +
                                std::to_string(A.cols()));
  if (b.size() != A.rows())
    throw InvalidParameterError("least_squares: rhs size mismatch");

  // Column equilibration keeps the rank test meaningful across scalings.
  Vector scale(A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    const double s = A.col(j).norm();
    scale[j] = (s > 0.0) ? s : 1.0;
  }
  DenseMatrix As = A * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<DenseMatrix> qr(As);
  const DenseMatrix& R = qr.matrixR();
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    const double d = std::abs(R(j, j));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  if (!(dmin > 1e-10 * dmax))
    throw RankDeficientError(
        "least_squares: matrix numerically rank-deficient (|R| ratio " +
            std::to_string(dmin / dmax) + ")",
        tag);
  Vector y = qr.solve(b);
  return scale.cwiseInverse().asDiagonal() * y;
}

Vector solve_spd(const SparseSymMatrix& M, const Vector& b, double rel_tol) {
  if (M.rows() != M.cols())
    throw InvalidParameterError("solve_spd: matrix must be square");
  if (b.size() != M.rows())
    throw InvalidParameterError("solve_spd: rhs size mismatch");
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Vector::Zero(M.rows());

  double best = std::numeric_limits<double>::infinity();
  SparseSymMatrix Mc = M;
  Mc.makeCompressed();

  Eigen::SimplicialLDLT<SparseSymMatrix> ldlt(Mc);
  if (ldlt.info() == Eigen::Success) {
    Vector x = ldlt.solve(b);
    if (x.allFinite()) {
      double res = (M * x - b).norm() / bnorm;
      // A few refinement rounds recover digits lost in the factorization.
      for (int it = 0; it < 5 && !(res <= rel_tol); ++it) {
        Vector dx = ldlt.solve(b - M * x);
        if (!dx.allFinite()) break;
        x += dx;
        res = (M * x - b).norm() / bnorm;
      }
      if (res <= rel_tol) return x;
      best = std::min(best, res);
    }
  }

  Eigen::ConjugateGradient<SparseSymMatrix, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg(Mc);
  cg.setTolerance(rel_tol);
  cg.setMaxIterations(50 * M.rows());
  Vector x = cg.solve(b);
  if (x.allFinite()) {
    const double res = (M * x - b).norm() / bnorm;
    if (res <= rel_tol) return x;
    best = std::min(best, res);
  }
  char res_str[32];
  std::snprintf(res_str, sizeof(res_str), "%.3e", best);
  throw SolverFailureError(
      "solve_spd: no solver reached the requested tolerance (achieved " +
          std::string(res_str) + ")",
      best);
}

}  // namespace wg
