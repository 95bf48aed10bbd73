#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_support.hpp"

#include <weyl/eigensolve.hpp>
#include <weyl/errors.hpp>
#include <weyl/geometry.hpp>
#include <weyl/oracles.hpp>

using namespace weyl;

TEST_CASE("dense spectrum of the square grid Laplacian") {
  const auto op = assemble_dirichlet_laplacian(rasterize(DomainSpec::rectangle(1.0, 1.0), 1.0 / 16));
  const auto spectrum = dense_spectrum(op);
  CHECK(spectrum.size() == 225);
  CHECK(spectrum.cutoff() == Spectrum::kComplete);
  CHECK(spectrum.source().kind == SpectrumSource::Kind::grid);
  const double s = std::sin(std::numbers::pi / 32);
  CHECK(spectrum.values().front() == doctest::Approx(2.0 * 4.0 * 256.0 * s * s).epsilon(1e-12));

  SolverOptions tight;
  tight.dense_limit = 100;
  CHECK_THROWS_AS(dense_spectrum(op, Problem::dirichlet, tight), InputError);
}

TEST_CASE("dense bilaplacian spectrum stores square roots") {
  const auto b = assemble_clamped_bilaplacian(GridMask(1.0, 2, {{0, 0}}));
  const auto roots = dense_spectrum(b, Problem::bilaplacian_root);
  CHECK(roots.problem() == Problem::bilaplacian_root);
  CHECK(roots.values()[0] == doctest::Approx(std::sqrt(20.0)));
}

TEST_CASE("lowest_k agrees with dense eigenvalues, multiplicities included") {
  SUBCASE("unit square, many double eigenvalues") {
    const auto op = assemble_dirichlet_laplacian(rasterize(DomainSpec::rectangle(1.0, 1.0), 1.0 / 24));
    const auto dense = testing::dense_eigenvalues(op.matrix());
    const auto low = lowest_k(op, 30, 1e-10);
    REQUIRE(low.size() == 30);
    for (Eigen::Index j = 0; j < 30; ++j) {
      CHECK(low.values()[static_cast<std::size_t>(j)] == doctest::Approx(dense[j]).epsilon(1e-8));
    }
    CHECK(low.cutoff() == low.values().back());
  }
  SUBCASE("random masks") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto op = assemble_dirichlet_laplacian(testing::random_mask(seed));
      const auto dense = testing::dense_eigenvalues(op.matrix());
      const auto k = std::min<Eigen::Index>(12, op.rows());
      const auto low = lowest_k(op, k, 1e-10);
      for (Eigen::Index j = 0; j < k; ++j) {
        CHECK(low.values()[static_cast<std::size_t>(j)] == doctest::Approx(dense[j]).epsilon(1e-8));
      }
    }
  }
  SUBCASE("bilaplacian roots") {
    const auto op = assemble_clamped_bilaplacian(rasterize(DomainSpec::disk(1.0), 0.1));
    const auto dense = testing::dense_eigenvalues(op.matrix());
    const auto low = lowest_k(op, 5, 1e-10, Problem::bilaplacian_root);
    for (Eigen::Index j = 0; j < 5; ++j) {
      CHECK(low.values()[static_cast<std::size_t>(j)] == doctest::Approx(std::sqrt(dense[j])).epsilon(1e-8));
    }
  }
  SUBCASE("k = n returns a complete spectrum") {
    const auto op = assemble_dirichlet_laplacian(GridMask(1.0, 2, {{0, 0}, {1, 0}, {0, 1}}));
    const auto all = lowest_k(op, 3, 1e-10);
    CHECK(all.cutoff() == Spectrum::kComplete);
    CHECK(all.values()[0] == doctest::Approx(4.0 - std::sqrt(2.0)));
  }
}

TEST_CASE("lowest_k reports non-convergence and bad arguments") {
  const auto op = assemble_dirichlet_laplacian(rasterize(DomainSpec::rectangle(1.0, 1.0), 1.0 / 20));
  SolverOptions capped;
  capped.max_restarts = 1;
  capped.krylov_dim = 12;
  try {
    lowest_k(op, 10, 1e-300, Problem::dirichlet, capped);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK_FALSE(e.residuals().empty());
  }
  CHECK_THROWS_AS(lowest_k(op, 0, 1e-8), InputError);
  CHECK_THROWS_AS(lowest_k(op, 1000, 1e-8), InputError);
}

TEST_CASE("generalized spectrum: dense reduction, sparse path and an independent solver agree") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto pencil = assemble_buckling_pencil(testing::random_mask(seed, 14, 1.0 / 15));
    const auto oracle = testing::dense_pencil_eigenvalues(pencil);
    const auto k = std::min<Eigen::Index>(8, pencil.rows());
    const auto dense = generalized_spectrum(pencil, k);
    SolverOptions sparse_only;
    sparse_only.dense_limit = 1;
    const auto sparse = generalized_spectrum(pencil, k, sparse_only);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto u = static_cast<std::size_t>(j);
      CHECK(dense.values()[u] == doctest::Approx(oracle[j]).epsilon(1e-9));
      CHECK(sparse.values()[u] == doctest::Approx(oracle[j]).epsilon(1e-7));
    }
  }
  const auto one = assemble_buckling_pencil(GridMask(1.0, 2, {{0, 0}}));
  CHECK(generalized_spectrum(one, 1).values()[0] == doctest::Approx(5.0));
}

TEST_CASE("buckling values converge at first order on the unit square") {
  const auto mu = [](double h) {
    return generalized_spectrum(assemble_buckling_pencil(rasterize(DomainSpec::rectangle(1.0, 1.0), h)), 1)
        .values()[0];
  };
  const double coarse = mu(1.0 / 64);
  const double fine = mu(1.0 / 128);
  CHECK(std::abs(coarse / fine - 1.0) < 0.03);
  const double limit = 2.0 * fine - coarse;  // Richardson for an O(h) error
  CHECK(limit == doctest::Approx(52.34).epsilon(0.005));
  CHECK(coarse < fine);
}

TEST_CASE("inertia counts match dense eigenvalue counts on both backends") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto mask = testing::random_mask(seed);
    const auto a = assemble_dirichlet_laplacian(mask);
    const auto b = assemble_clamped_bilaplacian(mask);
    const auto pencil = assemble_buckling_pencil(mask);
    const auto va = testing::dense_eigenvalues(a.matrix());
    const auto vb = testing::dense_eigenvalues(b.matrix());
    const auto vp = testing::dense_pencil_eigenvalues(pencil);
    SolverOptions dense_backend, sparse_backend;
    sparse_backend.dense_inertia_limit = 0;
    for (int trial = 0; trial < 5; ++trial) {
      std::uniform_int_distribution<Eigen::Index> pick(0, va.size() - 2);
      const auto j = pick(rng);
      const double la = 0.5 * (va[j] + va[j + 1]);
      const double lb = 0.5 * (vb[j] + vb[j + 1]);
      const double lp = 0.5 * (vp[j] + vp[j + 1]);
      if (va[j + 1] - va[j] < 1e-6 * va[j + 1]) continue;
      for (const auto& options : {dense_backend, sparse_backend}) {
        CHECK(inertia_count(a, la, options) == testing::count_below(va, la));
        if (vb[j + 1] - vb[j] > 1e-6 * vb[j + 1]) {
          CHECK(inertia_count(b, lb, options) == testing::count_below(vb, lb));
        }
        if (vp[j + 1] - vp[j] > 1e-6 * vp[j + 1]) {
          CHECK(inertia_count(pencil, lp, options) == testing::count_below(vp, lp));
        }
      }
    }
  }
}

TEST_CASE("a shift on an eigenvalue is rejected unless retries are allowed") {
  const auto a = assemble_dirichlet_laplacian(GridMask(1.0, 2, {{0, 0}}));
  SolverOptions sparse;
  sparse.dense_inertia_limit = 0;
  CHECK_THROWS_AS(inertia_count(a, 4.0), ShiftTooCloseError);
  CHECK_THROWS_AS(inertia_count(a, 4.0, sparse), ShiftTooCloseError);
  CHECK_THROWS_AS(inertia_count_with_retry(a, 4.0), ShiftTooCloseError);
  SolverOptions retry;
  retry.shift_retries = 2;
  const long n = inertia_count_with_retry(a, 4.0, retry);
  CHECK((n == 0 || n == 1));
  CHECK(inertia_count(a, 3.0) == 0);
  CHECK(inertia_count(a, 5.0) == 1);
}

TEST_CASE("Spectrum validates its values") {
  CHECK_THROWS_AS(Spectrum(Problem::dirichlet, {1.0, -1.0}, 10.0, SpectrumSource::analytic()), InputError);
  CHECK_THROWS_AS(Spectrum(Problem::dirichlet, {1.0, 20.0}, 10.0, SpectrumSource::analytic()), InputError);
  const Spectrum s(Problem::dirichlet, {3.0, 1.0, 2.0}, 10.0, SpectrumSource::analytic());
  CHECK(s.values() == std::vector<double>{1.0, 2.0, 3.0});
}
