#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "lanczos.hpp"
#include "weyl/eigensolve.hpp"
#include "weyl/errors.hpp"

namespace weyl {

namespace {

// Dense reduction wins for small pencils or when a large share of the
// spectrum is wanted; otherwise shift-invert Lanczos is far cheaper.
constexpr Eigen::Index kSmallPencil = 256;

bool prefer_dense(Eigen::Index n, Eigen::Index k, const SolverOptions& options) {
  return n <= options.dense_limit && (n <= kSmallPencil || 4 * k >= n);
}

void require_compatible(const OperatorPencil& pencil) {
  if (pencil.bilaplacian.rows() != pencil.laplacian.rows() ||
      !(pencil.bilaplacian.grid() == pencil.laplacian.grid())) {
    throw InputError("pencil operators must share one grid and node indexing");
  }
}

std::vector<double> dense_generalized(const OperatorPencil& pencil, Eigen::Index k) {
  const Eigen::MatrixXd a = Eigen::MatrixXd(pencil.laplacian.matrix());
  const Eigen::MatrixXd b = Eigen::MatrixXd(pencil.bilaplacian.matrix());
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("generalized_spectrum: A is not positive definite (Cholesky failed)");
  }
  // A = L Lᵀ, so R = Lᵀ and R^{-T} B R^{-1} = L^{-1} B L^{-T}.
  Eigen::MatrixXd reduced = llt.matrixL().solve(b);
  reduced = llt.matrixL().solve(reduced.transpose()).transpose();
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("reduced eigensolve did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + k);
}

std::vector<double> sparse_generalized(const OperatorPencil& pencil, Eigen::Index k,
                                       const SolverOptions& options) {
  using Cholesky = Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;
  const SparseMatrix& a = pencil.laplacian.matrix();
  const SparseMatrix& b = pencil.bilaplacian.matrix();
  const Eigen::Index n = a.rows();

  Cholesky a_factor(a);
  if (a_factor.info() != Eigen::Success) {
    throw NumericalError("generalized_spectrum: A is not positive definite (Cholesky failed)");
  }
  Cholesky b_factor(b);
  if (b_factor.info() != Eigen::Success) {
    throw NumericalError("generalized_spectrum: B is not positive definite (Cholesky failed)");
  }
  // P A Pᵀ = L Lᵀ, hence A = RᵀR with R = Lᵀ P.
  const SparseMatrix lower = a_factor.matrixL();
  const SparseMatrix upper = lower.transpose();
  const auto& perm = a_factor.permutationP();

  auto apply_rt = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {  // Rᵀ x = Pᵀ L x
    return perm.transpose() * (lower * x);
  };
  auto apply_r = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {  // R x = Lᵀ P x
    return upper * (perm * x);
  };
  auto solve_r = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {  // R^{-1} y
    Eigen::VectorXd z = upper.triangularView<Eigen::Upper>().solve(y);
    return perm.transpose() * z;
  };

  const double norm_a = pencil.laplacian.norm_bound();
  const double norm_b = pencil.bilaplacian.norm_bound();

  detail::ShiftInvertProblem problem;
  problem.n = n;
  problem.inverse = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    out = apply_r(b_factor.solve(apply_rt(in)));
  };
  problem.rayleigh = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = solve_r(y);
    return x.dot(b * x) / x.dot(a * x);
  };
  problem.residual = [&](double /*theta*/, const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = solve_r(y);
    const Eigen::VectorXd bx = b * x;
    const Eigen::VectorXd ax = a * x;
    const double mu = x.dot(bx) / x.dot(ax);
    return (bx - mu * ax).norm() / ((norm_b + mu * norm_a) * x.norm());
  };
  problem.count_below = [&](double threshold) { return inertia_count(pencil, threshold, options); };
  const detail::LanczosControl control{options.krylov_dim, options.max_restarts, options.tol,
                                       options.seed};
  return detail::lowest_eigenvalues(problem, k, control);
}

}  // namespace

Spectrum generalized_spectrum(const OperatorPencil& pencil, Eigen::Index k,
                              const SolverOptions& options) {
  require_compatible(pencil);
  const Eigen::Index n = pencil.rows();
  if (k <= 0 || k > n) {
    throw InputError("generalized_spectrum needs 1 <= k <= n (k=" + std::to_string(k) +
                     ", n=" + std::to_string(n) + ")");
  }
  std::vector<double> values = prefer_dense(n, k, options)
                                   ? dense_generalized(pencil, k)
                                   : sparse_generalized(pencil, k, options);
  if (values.front() <= 0.0) {
    throw NumericalError("generalized_spectrum: nonpositive buckling value " +
                         std::to_string(values.front()));
  }
  std::sort(values.begin(), values.end());
  const double cutoff = k == n ? Spectrum::kComplete : values.back();
  return Spectrum(Problem::buckling, std::move(values), cutoff,
                  SpectrumSource::grid(pencil.laplacian.grid().h));
}

}  // namespace weyl
