// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <weyl/weyl.hpp>

#include "test_support.hpp"

using namespace weyl;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 = none
  std::function<Verdict()> body;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Verdict rectangle_convergence() {
  const auto op = assemble_dirichlet_laplacian(rasterize(DomainSpec::rectangle(1.0, 1.0), 1.0 / 64));
  const auto grid = lowest_k(op, 20, 1e-10);
  const auto exact = rectangle_spectrum(1.0, 1.0, 400.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < 20; ++j) {
    worst = std::max(worst, std::abs(grid.values()[j] / exact.values()[j] - 1.0));
  }
  return {worst <= 0.01, fmt("max relative error over 20 eigenvalues %.3e (limit 1e-2)", worst)};
}

std::array<Spectrum, 3> full_spectra(const GridMask& mask) {
  return {dense_spectrum(assemble_dirichlet_laplacian(mask)),
          dense_spectrum(assemble_clamped_bilaplacian(mask), Problem::bilaplacian_root),
          generalized_spectrum(assemble_buckling_pencil(mask), static_cast<Eigen::Index>(mask.size()))};
}

Verdict exact_chain() {
  long violations = 0, checks = 0, mismatches = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto mask = testing::random_mask(seed, 20, 1.0 / 21);
    const auto spectra = full_spectra(mask);
    const auto lambdas = eigenvalue_avoiding_grid(spectra, 50);
    ChainReport report;
    try {
      report = verify_chain(mask, lambdas);
    } catch (const ChainViolation& e) {
      report = e.report();
    }
    for (const auto& row : report.rows) {
      ++checks;
      violations += row.pass ? 0 : 1;
      // The inertia counts must also agree with the dense spectra.
      mismatches += row.dirichlet != counting(spectra[0], row.lambda) ? 1 : 0;
      mismatches += row.bilaplacian != counting(spectra[1], row.lambda) ? 1 : 0;
      mismatches += row.buckling != counting(spectra[2], row.lambda) ? 1 : 0;
    }
  }
  return {violations == 0 && mismatches == 0 && checks == 5000,
          fmt("%ld lambda checks on 100 masks, %ld violations, %ld inertia/spectrum mismatches", checks,
              violations, mismatches)};
}

Verdict exact_superadditivity() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  long decompositions = 0, violations = 0, rows = 0;
  for (std::uint64_t seed = 1000; decompositions < 50; ++seed) {
    const auto whole = testing::random_mask(seed, 20, 1.0 / 21);
    const auto parts = split_separated(whole, angle(rng));
    if (parts[0].empty() || parts[1].empty()) continue;
    ++decompositions;
    const auto spectra = full_spectra(whole);
    const auto lambdas = eigenvalue_avoiding_grid(spectra, 20);
    SuperadditivityReport report;
    try {
      report = superadditivity_check(whole, parts, lambdas);
    } catch (const SuperadditivityViolation& e) {
      report = e.report();
    }
    for (const auto& row : report.rows) {
      ++rows;
      violations += row.pass ? 0 : 1;
    }
  }
  return {violations == 0, fmt("%ld decompositions, %ld (problem, lambda) checks, %ld violations",
                               decompositions, rows, violations)};
}

Verdict weyl_ratio() {
  const double lambda = 1e5;
  const auto square = rectangle_spectrum(1.0, 1.0, lambda);
  const long n = counting(square, lambda);
  const long enumerated = rectangle_count(1.0, 1.0, lambda);
  const double ratio = static_cast<double>(n) * 4.0 * kPi / lambda;
  return {n == enumerated && ratio >= 0.975 && ratio <= 1.0,
          fmt("N(1e5) = %ld (enumeration %ld), N*4pi/lambda = %.6f in [0.975, 1]", n, enumerated, ratio)};
}

Verdict cube_cover_bound() {
  const double eta = 0.05 * std::sqrt(2.0), lambda = 1e7;
  const auto cover = cube_cover(DomainSpec::disk(1.0), eta);
  const long bound = cube_lower_bound(cover, lambda);
  const double target = 0.9 * weyl_constant(2, cover.covered_volume) * lambda;
  const bool ok = !cover.empty() && bound >= target && cover.covered_volume >= 0.9 * kPi;
  return {ok, fmt("%zu cubes, covered %.4f (>= %.4f), bound %ld >= %.1f", cover.cubes.size(),
                  cover.covered_volume, 0.9 * kPi, bound, target)};
}

Verdict heat_bound_and_limit() {
  const auto square = rectangle_spectrum(1.0, 1.0, 1e6);
  const auto times = log_spaced(1e-4, 10.0, 60);
  const auto samples = heat_trace(square, times, TailModel{2, 1.0});
  bool bound_ok = true;
  double worst = 0.0;
  try {
    const auto report = heat_upper_bound_check(samples, 2, 1.0, 1e-9);
    for (const auto& row : report.rows) {
      if (row.trusted) worst = std::max(worst, row.scaled / row.bound);
    }
    bound_ok = report.passed();
  } catch (const InvariantViolation&) {
    bound_ok = false;
  }
  const auto window = log_spaced(1e-3, 1e-2, 24);
  const auto estimate = karamata_estimate(heat_trace(square, window, TailModel{2, 1.0}), 2, {{1e-3, 1e-2}});
  const double rel = std::abs(estimate.coefficient * 4.0 * kPi - 1.0);
  return {bound_ok && samples.trusted_count() > 0 && rel <= 0.02,
          fmt("%zu trusted samples, max t*h(t)*4pi = %.6f (<= 1+1e-9); Karamata a*4pi - 1 = %.2e (limit 2e-2)",
              samples.trusted_count(), worst, rel)};
}

Verdict tauberian_synthetic() {
  const auto times = log_spaced(1e-3, 1e-2, 24);
  std::vector<double> values;
  for (double t : times) values.push_back(1.0 / std::expm1(t));
  const auto estimate = karamata_estimate(heat_samples(times, values), 2);
  const double rel = std::abs(estimate.coefficient - 1.0);
  return {rel <= 0.005, fmt("coefficient %.8f, |a - 1| = %.2e (limit 5e-3)", estimate.coefficient, rel)};
}

Verdict disk_cross_validation() {
  const auto zeros = bessel_zeros(0, 3.0);
  const double oracle = zeros.front() * zeros.front();
  const auto op = assemble_dirichlet_laplacian(rasterize(DomainSpec::disk(1.0), 1.0 / 128));
  const double grid = lowest_k(op, 1, 1e-10).values().front();
  const double rel = std::abs(grid / oracle - 1.0);
  return {rel <= 0.015, fmt("grid lambda_1 = %.6f, j01^2 = %.6f, relative gap %.3e (limit 1.5e-2)", grid,
                            oracle, rel)};
}

Verdict laplace_identity() {
  const auto square = rectangle_spectrum(1.0, 1.0, 1e6);
  double worst = 0.0;
  for (double t : log_spaced(1e-4, 10.0, 20)) worst = std::max(worst, laplace_identity_check(square, t));
  return {worst <= 1e-12, fmt("max residual over 20 t values %.3e (limit 1e-12)", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rectangle oracle convergence", 60.0, rectangle_convergence},
      {2, "exact inequality chain", 0.0, exact_chain},
      {3, "exact superadditivity", 0.0, exact_superadditivity},
      {4, "Weyl ratio", 5.0, weyl_ratio},
      {5, "cube-cover lower bound", 10.0, cube_cover_bound},
      {6, "heat-trace bound and limit", 30.0, heat_bound_and_limit},
      {7, "tauberian synthetic oracle", 0.0, tauberian_synthetic},
      {8, "disk cross-validation", 0.0, disk_cross_validation},
      {9, "Laplace identity", 0.0, laplace_identity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = c.body();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit <= 0.0 || seconds <= c.time_limit;
    const bool pass = verdict.pass && in_time;
    failures += pass ? 0 : 1;
    std::string timing = fmt("%.2f s", seconds);
    if (c.time_limit > 0.0) timing += fmt(" (limit %.0f s)", c.time_limit);
    std::printf("%s [%d] %s: %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.name, verdict.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
