#include "lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include "weyl/eigensolve.hpp"
#include "weyl/errors.hpp"

namespace weyl {

namespace detail {

Eigen::VectorXd seeded_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v[k] = 2.0 * static_cast<double>(engine() >> 11) * 0x1.0p-53 - 1.0;
  }
  return v;
}

namespace {

// Two passes of classical Gram-Schmidt against the first `count` columns.
double orthogonalize(const Eigen::MatrixXd& basis, Eigen::Index count, Eigen::VectorXd& v) {
  for (int pass = 0; pass < 2; ++pass) {
    if (count == 0) break;
    const Eigen::VectorXd coeffs = basis.leftCols(count).transpose() * v;
    v.noalias() -= basis.leftCols(count) * coeffs;
  }
  return v.norm();
}

}  // namespace

RitzPairs lanczos_largest(Eigen::Index n, const LinearMap& apply, Eigen::Index k,
                          const LanczosControl& control, const ResidualFn& residual) {
  if (k <= 0 || k > n) throw InputError("Lanczos needs 1 <= k <= n");
  Eigen::Index m = control.krylov_dim > 0 ? control.krylov_dim : std::max<Eigen::Index>(2 * k + 20, 40);
  m = std::clamp<Eigen::Index>(m, std::min<Eigen::Index>(k + 1, n), n);
  const Eigen::Index keep_target = std::min<Eigen::Index>(k + (m - k) / 2, m - 1);

  Eigen::MatrixXd basis(n, m);
  Eigen::MatrixXd images(n, m);
  std::uint64_t seed = control.seed;

  Eigen::VectorXd start = seeded_vector(n, seed++);
  basis.col(0) = start / start.norm();
  Eigen::Index filled = 0;
  Eigen::VectorXd work(n);
  Eigen::VectorXd next(n);
  std::vector<double> residuals(static_cast<std::size_t>(k), 0.0);

  for (int cycle = 0; cycle <= control.max_restarts; ++cycle) {
    bool exhausted = false;
    while (filled < m) {
      apply(basis.col(filled), work);
      images.col(filled) = work;
      ++filled;
      if (filled == m) break;
      next = work;
      const double before = next.norm();
      double norm = orthogonalize(basis, filled, next);
      if (norm <= 1e-10 * std::max(before, 1e-300)) {
        // Invariant subspace: continue with a fresh direction.
        next = seeded_vector(n, seed++);
        const double fresh = next.norm();
        norm = orthogonalize(basis, filled, next);
        if (norm <= 1e-10 * fresh) {
          exhausted = true;
          break;
        }
      }
      basis.col(filled) = next / norm;
    }

    Eigen::MatrixXd projected = basis.leftCols(filled).transpose() * images.leftCols(filled);
    projected = 0.5 * (projected + projected.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(projected);
    if (small.info() != Eigen::Success) throw NumericalError("Rayleigh-Ritz eigensolve failed");
    const Eigen::Index available = std::min<Eigen::Index>(k, filled);

    RitzPairs pairs;
    pairs.values.resize(available);
    pairs.vectors.resize(n, available);
    bool converged = available == k;
    for (Eigen::Index r = 0; r < available; ++r) {
      const Eigen::Index idx = filled - 1 - r;
      const Eigen::VectorXd coeffs = small.eigenvectors().col(idx);
      pairs.values[r] = small.eigenvalues()[idx];
      pairs.vectors.col(r) = basis.leftCols(filled) * coeffs;
      residuals[static_cast<std::size_t>(r)] = residual(pairs.values[r], pairs.vectors.col(r));
      if (!(residuals[static_cast<std::size_t>(r)] <= control.tol)) converged = false;
    }
    if (converged || exhausted || filled == n) {
      pairs.residuals.assign(residuals.begin(), residuals.begin() + available);
      if (available < k) {
        throw NonConvergenceError("Krylov space exhausted before k pairs were found",
                                  pairs.residuals);
      }
      if (!converged) {
        throw NonConvergenceError("Lanczos pairs did not reach the residual tolerance",
                                  pairs.residuals);
      }
      return pairs;
    }

    // Thick restart: keep the leading Ritz vectors plus the residual direction.
    next = images.col(filled - 1);
    const double before = next.norm();
    double norm = orthogonalize(basis, filled, next);
    if (norm <= 1e-10 * std::max(before, 1e-300)) {
      next = seeded_vector(n, seed++);
      norm = orthogonalize(basis, filled, next);
    }
    const Eigen::MatrixXd kept_coeffs = small.eigenvectors().rightCols(keep_target);
    const Eigen::MatrixXd kept_basis = basis.leftCols(filled) * kept_coeffs;
    const Eigen::MatrixXd kept_images = images.leftCols(filled) * kept_coeffs;
    basis.leftCols(keep_target) = kept_basis;
    images.leftCols(keep_target) = kept_images;
    basis.col(keep_target) = next / norm;
    filled = keep_target;
  }
  throw NonConvergenceError("Lanczos hit the restart cap", residuals);
}

std::vector<double> lowest_eigenvalues(const ShiftInvertProblem& problem, Eigen::Index k,
                                       const LanczosControl& control) {
  const Eigen::Index n = problem.n;
  struct Found {
    double value;
    Eigen::VectorXd vector;
  };
  std::vector<Found> found;
  Eigen::MatrixXd deflation(n, 0);
  constexpr int kMaxDeflations = 16;

  for (int round = 0; round < kMaxDeflations; ++round) {
    const Eigen::Index wanted = std::min<Eigen::Index>(k, n - deflation.cols());
    if (wanted <= 0) break;
    LinearMap apply = problem.inverse;
    if (deflation.cols() > 0) {
      apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
        Eigen::VectorXd projected = in - deflation * (deflation.transpose() * in);
        problem.inverse(projected, out);
        out -= deflation * (deflation.transpose() * out);
      };
    }
    LanczosControl local = control;
    local.seed = control.seed + 7919ULL * static_cast<std::uint64_t>(round);
    const RitzPairs pairs = lanczos_largest(n, apply, wanted, local, problem.residual);
    for (Eigen::Index r = 0; r < pairs.vectors.cols(); ++r) {
      found.push_back({problem.rayleigh(pairs.vectors.col(r)), pairs.vectors.col(r)});
    }
    std::sort(found.begin(), found.end(),
              [](const Found& a, const Found& b) { return a.value < b.value; });

    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), found.size());
    const double kth = found[take - 1].value;
    // Everything clearly below the k-th value must already be present.
    double threshold = kth * (1.0 - 1e-7);
    long expected = 0;
    for (std::size_t r = 0; r < found.size() && found[r].value < threshold; ++r) ++expected;
    long actual = 0;
    for (int attempt = 0;; ++attempt) {
      try {
        actual = problem.count_below(threshold);
        break;
      } catch (const ShiftTooCloseError&) {
        if (attempt >= 3) throw;
        threshold *= 1.0 - 1e-9;
      }
    }
    if (actual == expected && take == static_cast<std::size_t>(k)) {
      std::vector<double> values;
      values.reserve(take);
      for (std::size_t r = 0; r < take; ++r) values.push_back(found[r].value);
      return values;
    }
    Eigen::MatrixXd next(n, static_cast<Eigen::Index>(found.size()));
    for (std::size_t r = 0; r < found.size(); ++r) {
      next.col(static_cast<Eigen::Index>(r)) = found[r].vector;
    }
    // Re-orthonormalize so the projector stays exact.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(next);
    deflation = qr.householderQ() * Eigen::MatrixXd::Identity(n, next.cols());
  }
  throw NonConvergenceError("eigenvalue count disagrees with inertia after deflated restarts", {});
}

}  // namespace detail

namespace {

std::string residual_summary(const std::vector<double>& residuals) {
  std::ostringstream os;
  os.precision(3);
  os << "residuals:";
  for (double r : residuals) os << ' ' << r;
  return os.str();
}

}  // namespace

Spectrum lowest_k(const SymmetricOperator& op, Eigen::Index k, double tol, Problem problem_tag,
                  const SolverOptions& options) {
  const Eigen::Index n = op.rows();
  if (k <= 0 || k > n) {
    throw InputError("lowest_k needs 1 <= k <= n_rows (k=" + std::to_string(k) +
                     ", n=" + std::to_string(n) + ")");
  }
  if (!(tol > 0.0)) throw InputError("lowest_k tolerance must be positive");

  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> cholesky(op.matrix());
  if (cholesky.info() != Eigen::Success) {
    throw NumericalError("lowest_k: operator is not positive definite (Cholesky failed)");
  }
  const double norm = op.norm_bound();
  const SparseMatrix& a = op.matrix();

  detail::ShiftInvertProblem problem;
  problem.n = n;
  problem.inverse = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    out = cholesky.solve(in);
  };
  problem.residual = [&](double /*theta*/, const Eigen::VectorXd& x) {
    const Eigen::VectorXd ax = a * x;
    const double rayleigh = x.dot(ax) / x.squaredNorm();
    return (ax - rayleigh * x).norm() / (norm * x.norm());
  };
  problem.rayleigh = [&](const Eigen::VectorXd& x) { return x.dot(a * x) / x.squaredNorm(); };
  problem.count_below = [&](double threshold) { return inertia_count(op, threshold, options); };
  const detail::LanczosControl control{options.krylov_dim, options.max_restarts, tol, options.seed};

  std::vector<double> values;
  try {
    values = detail::lowest_eigenvalues(problem, k, control);
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(std::string("lowest_k: ") + e.what() + "; " +
                                  residual_summary(e.residuals()),
                              e.residuals());
  }
  if (problem_tag == Problem::bilaplacian_root) {
    for (double& v : values) v = std::sqrt(v);
  }
  std::sort(values.begin(), values.end());
  const double cutoff = k == n ? Spectrum::kComplete : values.back();
  return Spectrum(problem_tag, std::move(values), cutoff, SpectrumSource::grid(op.grid().h));
}

}  // namespace weyl
