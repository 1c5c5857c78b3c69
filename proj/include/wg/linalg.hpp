#pragma once
#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace wg {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseSymMatrix = Eigen::SparseMatrix<double>;

// Minimizer of ||A x - b|| for a full-column-rank A with rows >= cols,
// via QR of the column-equilibrated matrix. Throws RankDeficientError
// (carrying `tag`) when the scaled R has a diagonal entry below
// 1e-10 times its largest one.
Vector least_squares(const DenseMatrix& A, const Vector& b, int tag = -1);

// Solve M x = b for symmetric positive definite M so that
// ||M x - b|| <= rel_tol * ||b||. Direct Cholesky-type factorization with
// iterative refinement; falls back to diagonally preconditioned conjugate
// gradients with an iteration budget of 50 * dim. Throws SolverFailureError
// (carrying the achieved residual) when neither reaches the tolerance.
Vector solve_spd(const SparseSymMatrix& M, const Vector& b,
                 double rel_tol = 1e-12);

}  // namespace wg
