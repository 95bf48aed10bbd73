#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace weyl::detail {

using LinearMap = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

/// Relative residual of a candidate pair (θ, x) of the transformed operator,
/// measured on the caller's original problem.
using ResidualFn = std::function<double(double theta, const Eigen::VectorXd& x)>;

struct LanczosControl {
  Eigen::Index krylov_dim = 0;
  int max_restarts = 300;
  double tol = 1e-8;
  std::uint64_t seed = 0x5eedULL;
};

struct RitzPairs {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // unit columns
  std::vector<double> residuals;
};

/// Largest k eigenpairs of a symmetric linear map of dimension n.
RitzPairs lanczos_largest(Eigen::Index n, const LinearMap& apply, Eigen::Index k,
                          const LanczosControl& control, const ResidualFn& residual);

/// A symmetric eigenproblem presented through a shift-invert map T whose
/// largest eigenvalues correspond to the wanted lowest eigenvalues.
struct ShiftInvertProblem {
  Eigen::Index n = 0;
  LinearMap inverse;
  ResidualFn residual;
  /// Eigenvalue of the original problem for a (transformed-space) vector.
  std::function<double(const Eigen::VectorXd& x)> rayleigh;
  /// Exact number of eigenvalues strictly below a threshold (inertia).
  std::function<long(double threshold)> count_below;
};

/// Lowest k eigenvalues, ascending. Single-vector Krylov spaces see one
/// direction per eigenspace, so the result is validated against count_below
/// and missing multiplicities are recovered by deflated restarts.
std::vector<double> lowest_eigenvalues(const ShiftInvertProblem& problem, Eigen::Index k,
                                       const LanczosControl& control);

/// Deterministic uniform(-1, 1) vector from a 64-bit seed.
Eigen::VectorXd seeded_vector(Eigen::Index n, std::uint64_t seed);

}  // namespace weyl::detail
