#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "lanczos.hpp"
#include "weyl/eigensolve.hpp"
#include "weyl/errors.hpp"

namespace weyl {

namespace {

constexpr int kSpotChecks = 5;
constexpr double kBackwardTol = 1e-8;
// Above this size eigenvectors are not formed; spot checks use inverse
// iteration on the sparse matrix instead.
constexpr Eigen::Index kVectorLimit = 1500;

std::vector<Eigen::Index> spot_indices(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<Eigen::Index> picks;
  for (int s = 0; s < kSpotChecks && s < n; ++s) {
    picks.push_back(static_cast<Eigen::Index>(engine() % static_cast<std::uint64_t>(n)));
  }
  return picks;
}

void check_backward_error(double residual, double norm, double value) {
  if (!(residual <= kBackwardTol * norm)) {
    throw NumericalError("dense eigensolver backward error " + std::to_string(residual) +
                         " exceeds 1e-8*||A|| at eigenvalue " + std::to_string(value));
  }
}

double inverse_iteration_residual(const SymmetricOperator& op, double value, std::uint64_t seed) {
  const Eigen::Index n = op.rows();
  const double norm = op.norm_bound();
  const double shift = value - 1e-10 * norm;
  SparseMatrix shifted = op.matrix();
  for (Eigen::Index d = 0; d < n; ++d) shifted.coeffRef(d, d) -= shift;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) return 0.0;  // the shift is an eigenvalue to working precision
  Eigen::VectorXd x = detail::seeded_vector(n, seed);
  for (int step = 0; step < 3; ++step) {
    x = ldlt.solve(x);
    x /= x.norm();
  }
  return (op.matrix() * x - value * x).norm();
}

}  // namespace

Spectrum dense_spectrum(const SymmetricOperator& op, Problem problem, const SolverOptions& options) {
  const Eigen::Index n = op.rows();
  if (n == 0) throw InputError("dense_spectrum: empty operator");
  if (n > options.dense_limit) {
    throw InputError("dense_spectrum: size " + std::to_string(n) + " exceeds dense limit " +
                     std::to_string(options.dense_limit));
  }
  const Eigen::MatrixXd dense = Eigen::MatrixXd(op.matrix());
  const bool with_vectors = n <= kVectorLimit;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      dense, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");

  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  const double norm = op.norm_bound();
  for (const Eigen::Index j : spot_indices(n, options.seed)) {
    double residual = 0.0;
    if (with_vectors) {
      const Eigen::VectorXd v = solver.eigenvectors().col(j);
      residual = (op.matrix() * v - eigenvalues[j] * v).norm();
    } else {
      residual = inverse_iteration_residual(op, eigenvalues[j], options.seed + static_cast<std::uint64_t>(j));
    }
    check_backward_error(residual, norm, eigenvalues[j]);
  }

  std::vector<double> values(eigenvalues.data(), eigenvalues.data() + n);
  if (values.front() <= 0.0) {
    throw NumericalError("dense_spectrum: operator is not positive definite (smallest eigenvalue " +
                         std::to_string(values.front()) + ")");
  }
  if (problem == Problem::bilaplacian_root) {
    for (double& v : values) v = std::sqrt(v);
  }
  return Spectrum(problem, std::move(values), Spectrum::kComplete, SpectrumSource::grid(op.grid().h));
}

}  // namespace weyl
