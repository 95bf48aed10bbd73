#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <lapacke.h>

#include "weyl/eigensolve.hpp"
#include "weyl/errors.hpp"

namespace weyl {

namespace {

// Unpivoted sparse LDLᵀ multipliers beyond this size mean the factorization
// lost its footing (a tiny pivot that stayed above the tolerance); the count
// is then not trusted.
constexpr double kMaxMultiplier = 1e8;

long dense_negative_count(const SparseMatrix& matrix, double scale, double shift, double pivot_tol) {
  const lapack_int n = static_cast<lapack_int>(matrix.rows());
  Eigen::MatrixXd a = Eigen::MatrixXd(matrix);
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info < 0) throw NumericalError("dsytrf: invalid argument " + std::to_string(-info));
  if (info > 0) throw ShiftTooCloseError(shift, 0.0, scale);

  const double floor = pivot_tol * scale;
  long negatives = 0;
  for (lapack_int k = 0; k < n;) {
    if (ipiv[static_cast<std::size_t>(k)] > 0) {
      const double d = a(k, k);
      if (std::abs(d) < floor) throw ShiftTooCloseError(shift, d, scale);
      if (d < 0.0) ++negatives;
      k += 1;
    } else {
      // 2×2 Bunch-Kaufman block [[p, q], [q, r]].
      const double p = a(k, k);
      const double q = a(k + 1, k);
      const double r = a(k + 1, k + 1);
      const double mean = 0.5 * (p + r);
      const double radius = std::hypot(0.5 * (p - r), q);
      const double lo = mean - radius;
      const double hi = mean + radius;
      if (std::min(std::abs(lo), std::abs(hi)) < floor) {
        throw ShiftTooCloseError(shift, std::abs(lo) < std::abs(hi) ? lo : hi, scale);
      }
      negatives += (lo < 0.0 ? 1 : 0) + (hi < 0.0 ? 1 : 0);
      k += 2;
    }
  }
  return negatives;
}

long sparse_negative_count(const SparseMatrix& matrix, double scale, double shift, double pivot_tol) {
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(matrix);
  if (ldlt.info() != Eigen::Success) throw ShiftTooCloseError(shift, 0.0, scale);
  const Eigen::VectorXd d = ldlt.vectorD();
  const double floor = pivot_tol * scale;
  long negatives = 0;
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    if (!(std::abs(d[k]) >= floor)) throw ShiftTooCloseError(shift, d[k], scale);
    if (d[k] < 0.0) ++negatives;
  }
  const SparseMatrix lower = ldlt.matrixL();
  for (int col = 0; col < lower.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(lower, col); it; ++it) {
      if (std::abs(it.value()) > kMaxMultiplier) {
        throw ShiftTooCloseError(shift, d[col], scale);
      }
    }
  }
  return negatives;
}

}  // namespace

long negative_inertia(const SparseMatrix& matrix, double scale, double shift,
                      const SolverOptions& options) {
  if (matrix.rows() == 0) return 0;
  if (matrix.rows() <= options.dense_inertia_limit) {
    return dense_negative_count(matrix, scale, shift, options.pivot_tol);
  }
  return sparse_negative_count(matrix, scale, shift, options.pivot_tol);
}

long inertia_count(const SymmetricOperator& op, double threshold, const SolverOptions& options) {
  if (!std::isfinite(threshold)) throw InputError("inertia threshold must be finite");
  SparseMatrix shifted = op.matrix();
  for (Eigen::Index d = 0; d < shifted.rows(); ++d) shifted.coeffRef(d, d) -= threshold;
  const double scale = std::max(op.norm_bound(), std::abs(threshold));
  return negative_inertia(shifted, scale, threshold, options);
}

long inertia_count(const OperatorPencil& pencil, double threshold, const SolverOptions& options) {
  if (!std::isfinite(threshold)) throw InputError("inertia threshold must be finite");
  if (pencil.bilaplacian.rows() != pencil.laplacian.rows() ||
      !(pencil.bilaplacian.grid() == pencil.laplacian.grid())) {
    throw InputError("pencil operators must share one grid and node indexing");
  }
  // A is positive definite, so B − θA is congruent to R^{-T}BR^{-1} − θI.
  SparseMatrix shifted = pencil.bilaplacian.matrix() - threshold * pencil.laplacian.matrix();
  const double scale =
      pencil.bilaplacian.norm_bound() + std::abs(threshold) * pencil.laplacian.norm_bound();
  return negative_inertia(shifted, scale, threshold, options);
}

}  // namespace weyl
