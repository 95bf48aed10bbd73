#pragma once

#include <cstdint>

#include "weyl/discretization.hpp"
#include "weyl/spectrum.hpp"

namespace weyl {

struct SolverOptions {
  /// Largest matrix handed to the dense tridiagonal-QR path.
  Eigen::Index dense_limit = 8192;
  /// Residual tolerance relative to the operator norm bound.
  double tol = 1e-8;
  /// Krylov basis size per restart cycle; 0 picks max(2k + 20, 40).
  Eigen::Index krylov_dim = 0;
  int max_restarts = 300;
  std::uint64_t seed = 0x5eedULL;
  /// Up to this size inertia uses a dense Bunch-Kaufman factorization, above it
  /// a sparse LDLᵀ with fill-reducing ordering.
  Eigen::Index dense_inertia_limit = 1024;
  /// Relative pivot magnitude below which a shift is declared too close to
  /// the spectrum.
  double pivot_tol = 1e-12;
  /// Retries of a count at threshold·(1 ± 1e-9·attempt) after a
  /// ShiftTooCloseError; zero makes near-eigenvalue shifts a hard error.
  int shift_retries = 0;
};

/// Every eigenvalue of `op`, ascending. For Problem::bilaplacian_root the
/// square roots are stored. Backward error ‖Av − λv‖ ≤ 1e-8·‖A‖ is
/// spot-checked on five seeded eigenpairs.
Spectrum dense_spectrum(const SymmetricOperator& op, Problem problem = Problem::dirichlet,
                        const SolverOptions& options = {});

/// Lowest k eigenvalues by shift-invert Lanczos with full reorthogonalization
/// and thick restarts, converged when ‖Av − λv‖ ≤ tol·‖A‖. Throws
/// NonConvergenceError with the achieved residuals after max_restarts cycles.
Spectrum lowest_k(const SymmetricOperator& op, Eigen::Index k, double tol,
                  Problem problem = Problem::dirichlet, const SolverOptions& options = {});

/// Lowest k buckling values μ of B u = μ A u via A = RᵀR and the standard
/// problem R^{-T} B R^{-1}. Dense reduction (within dense_limit) for small pencils
/// or k ≥ n/4, shift-invert Lanczos otherwise.
/// Throws NumericalError if A is not positive definite.
Spectrum generalized_spectrum(const OperatorPencil& pencil, Eigen::Index k,
                              const SolverOptions& options = {});

/// Number of eigenvalues of `op` strictly below `threshold`, from the inertia of
/// op − threshold·I. Throws ShiftTooCloseError on a near-singular shift.
long inertia_count(const SymmetricOperator& op, double threshold, const SolverOptions& options = {});

/// Number of pencil eigenvalues strictly below `threshold`: inertia of B − θA.
long inertia_count(const OperatorPencil& pencil, double threshold,
                   const SolverOptions& options = {});

/// Negative eigenvalue count of a symmetric sparse matrix (shared backend of
/// the overloads above). `scale` sets the pivot threshold pivot_tol·scale.
long negative_inertia(const SparseMatrix& matrix, double scale, double shift,
                      const SolverOptions& options = {});

/// inertia_count with options.shift_retries perturbed retries.
template <typename Counted>
long inertia_count_with_retry(const Counted& target, double threshold,
                              const SolverOptions& options = {});

}  // namespace weyl

#include "weyl/detail/inertia_retry.hpp"
