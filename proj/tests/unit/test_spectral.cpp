#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"

#include <weyl/weyl.hpp>

using namespace weyl;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

Spectrum analytic(std::vector<double> values, double cutoff = Spectrum::kComplete) {
  return Spectrum(Problem::dirichlet, std::move(values), cutoff, SpectrumSource::analytic());
}

/// Unit square count by direct double loop over m² + n² < λ/π².
long lattice_count(double lambda) {
  long n = 0;
  for (long a = 1; kPi2 * (a * a + 1) < lambda; ++a) {
    for (long b = 1; kPi2 * (a * a + b * b) < lambda; ++b) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("Weyl constant and half-integer Gamma") {
  CHECK(weyl_constant(2, 1.0) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-15));
  CHECK(weyl_constant(1, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(weyl_constant(3, 1.0) == doctest::Approx(1.0 / (6.0 * kPi2)).epsilon(1e-15));
  CHECK(weyl_constant(2, 3.0) == doctest::Approx(3.0 / (4.0 * kPi)).epsilon(1e-15));
  for (int m = 1; m <= 30; ++m) {
    CHECK(gamma_half_integer(m) == doctest::Approx(std::tgamma(0.5 * m)).epsilon(1e-13));
  }
}

TEST_CASE("counting is strict") {
  const auto square = rectangle_spectrum(1.0, 1.0, 200.0);
  CHECK(counting(square, 5.0 * kPi2) == 1);
  CHECK(counting(square, 100.0) == 6);
  CHECK(counting(analytic({}), 3.0) == 0);
  CHECK_THROWS_AS(counting(square, 201.0), InputError);
  for (std::size_t j = 0; j < square.size(); ++j) {
    const double v = square.values()[j];
    const auto below = std::count_if(square.values().begin(), square.values().end(),
                                     [v](double x) { return x < v; });
    CHECK(counting(square, v) == below);
  }
}

TEST_CASE("rectangle and interval oracles") {
  const auto small = rectangle_spectrum(1.0, 1.0, 50.0);
  REQUIRE(small.size() == 3);
  CHECK(small.values()[0] == doctest::Approx(2.0 * kPi2));
  CHECK(small.values()[2] == doctest::Approx(5.0 * kPi2));
  CHECK(rectangle_spectrum(1.0, 1.0, 100.0).size() == 6);
  CHECK(rectangle_spectrum(2.0, 1.0, 12.0).empty());
  CHECK(rectangle_spectrum(2.0, 1.0, 12.0).cutoff() == 12.0);
  for (double lambda : {10.0, 500.0, 12345.0, 1e5}) {
    CHECK(rectangle_count(1.0, 1.0, lambda) == lattice_count(lambda));
  }
  CHECK(rectangle_count(1.0, 1.0, 1e4) == static_cast<long>(rectangle_spectrum(1.0, 1.0, 1e4).size()));

  const auto line = interval_spectrum(1.0, 50.0);
  REQUIRE(line.size() == 2);
  CHECK(line.values()[1] == doctest::Approx(4.0 * kPi2));
  CHECK(interval_spectrum(1.0, kPi2).empty());
  CHECK(interval_spectrum(2.0, 30.0).size() == 3);  // π²/4, π², 9π²/4
  const auto two = interval_spectrum(2.0, 62.0);
  REQUIRE(two.size() == 5);
  CHECK(two.values()[4] == doctest::Approx(25.0 * kPi2 / 4.0));
  CHECK(interval_count(2.0, 62.0) == 5);
}

TEST_CASE("Bessel series against the standard library") {
  for (int order = 0; order <= 5; ++order) {
    for (double x = 0.0; x <= 60.0; x += 1.7) {
      CHECK(bessel_j(order, x) == doctest::Approx(std::cyl_bessel_j(order, x)).epsilon(1e-10).scale(1.0));
    }
  }
  CHECK_THROWS_AS(bessel_j(0, 61.0), InputError);
  const auto zeros = bessel_zeros(0, 20.0);
  REQUIRE(zeros.size() == 6);
  for (double z : zeros) CHECK(std::abs(std::cyl_bessel_j(0, z)) < 1e-9);
}

TEST_CASE("disk oracle") {
  const auto disk = disk_spectrum(1.0, 40.0);
  CHECK(disk.values()[0] == doctest::Approx(5.78319).epsilon(1e-5));
  CHECK(disk.values()[1] == doctest::Approx(14.682).epsilon(1e-4));
  CHECK(disk.values()[2] == disk.values()[1]);
  CHECK(disk_spectrum(2.0, 10.0).values()[0] == doctest::Approx(disk.values()[0] / 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(disk_spectrum(1.0, 4000.0), InputError);
  // Weyl law with the two-term correction for the disk: N ≈ λ/4 − √λ/2.
  const double lambda = 3000.0;
  const double n = static_cast<double>(counting(disk_spectrum(1.0, lambda), lambda));
  CHECK(n == doctest::Approx(lambda / 4.0 - std::sqrt(lambda) / 2.0).epsilon(0.02));
}

TEST_CASE("inequality chain on explicit cases") {
  const GridMask one(1.0, 2, {{0, 0}});
  const std::array<double, 2> lambdas{4.6, 1.0};
  const auto report = verify_chain(one, lambdas);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].buckling == 0);
  CHECK(report.rows[0].bilaplacian == 1);
  CHECK(report.rows[0].dirichlet == 1);
  CHECK(report.rows[1].dirichlet == 0);
  CHECK(report.rows[1].bilaplacian == 0);
  CHECK(report.rows[1].buckling == 0);
  CHECK(report.passed());
  std::ostringstream out;
  report.write(out);
  CHECK(out.str().rfind("PASS lambda=4.5999", 0) == 0);
  CHECK(out.str().find("N_b=0 N_bl=1 N_D=1\n") != std::string::npos);
}

TEST_CASE("inequality chain on random masks at eigenvalue-avoiding points") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto mask = testing::random_mask(seed, 12, 1.0 / 13);
    const std::array<Spectrum, 3> spectra{
        dense_spectrum(assemble_dirichlet_laplacian(mask)),
        dense_spectrum(assemble_clamped_bilaplacian(mask), Problem::bilaplacian_root),
        generalized_spectrum(assemble_buckling_pencil(mask), static_cast<Eigen::Index>(mask.size()))};
    const auto lambdas = eigenvalue_avoiding_grid(spectra, 30);
    const auto report = verify_chain(mask, lambdas);
    CHECK(report.passed());
    for (const auto& row : report.rows) {
      CHECK(row.dirichlet == counting(spectra[0], row.lambda));
      CHECK(row.bilaplacian == counting(spectra[1], row.lambda));
      CHECK(row.buckling == counting(spectra[2], row.lambda));
    }
  }
}

TEST_CASE("eigenvalue-avoiding grid stays strictly between distinct values") {
  const std::array<Spectrum, 2> spectra{analytic({1.0, 2.0, 2.0, 2.0 * (1 + 1e-12), 5.0}),
                                        analytic({1.5, 3.0})};
  const auto grid = eigenvalue_avoiding_grid(spectra, 10);
  CHECK_FALSE(grid.empty());
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  for (double lambda : grid) {
    for (const auto& s : spectra) {
      for (double v : s.values()) CHECK(std::abs(lambda - v) > 1e-6);
    }
  }
  CHECK(grid.front() == doctest::Approx(0.5));
  CHECK(eigenvalue_avoiding_grid(spectra, 3, 1.6).back() <= 1.6);
}

TEST_CASE("superadditivity") {
  SUBCASE("two separated strips: equality") {
    const GridMask left(1.0, 2, {{0, 0}, {1, 0}, {2, 0}});
    const GridMask right(1.0, 2, {{5, 0}, {6, 0}, {7, 0}});
    std::vector<LatticePoint> all(left.nodes().begin(), left.nodes().end());
    all.insert(all.end(), right.nodes().begin(), right.nodes().end());
    const GridMask whole(1.0, 2, all);
    const std::array<GridMask, 2> parts{left, right};
    const std::array<double, 4> lambdas{3.0, 4.5, 5.5, 7.5};
    const auto report = superadditivity_check(whole, parts, lambdas);
    CHECK(report.passed());
    for (const auto& row : report.rows) CHECK(row.whole == row.parts[0] + row.parts[1]);
  }
  SUBCASE("parts = [whole]: equality") {
    const auto whole = testing::random_mask(5, 10, 0.1);
    const std::array<GridMask, 1> parts{whole};
    const std::array<double, 3> lambdas{50.0, 200.0, 390.0};
    for (const auto& row : superadditivity_check(whole, parts, lambdas).rows) {
      CHECK(row.whole == row.parts[0]);
    }
  }
  SUBCASE("unit square with a two-column gap") {
    const auto whole = rasterize(DomainSpec::rectangle(1.0, 1.0), 1.0 / 16);
    std::vector<LatticePoint> l, r;
    for (const auto& p : whole.nodes()) {
      if (p.i <= 7) l.push_back(p);
      if (p.i >= 10) r.push_back(p);
    }
    const std::array<GridMask, 2> parts{GridMask(whole.h(), 2, l), GridMask(whole.h(), 2, r)};
    const std::array<Spectrum, 1> spectra{dense_spectrum(assemble_dirichlet_laplacian(whole))};
    const auto lambdas = eigenvalue_avoiding_grid(spectra, 20, 600.0);
    const auto report = superadditivity_check(whole, parts, lambdas);
    CHECK(report.passed());
    bool strict = false;
    for (const auto& row : report.rows) strict = strict || row.whole > row.parts[0] + row.parts[1];
    CHECK(strict);
  }
  SUBCASE("random separated splits") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto whole = testing::random_mask(seed, 12, 1.0 / 13);
      const auto parts = split_separated(whole, angle(rng));
      if (parts[0].empty() || parts[1].empty()) continue;
      require_separated_parts(whole, parts);
      const std::array<Spectrum, 1> spectra{dense_spectrum(assemble_dirichlet_laplacian(whole))};
      const auto lambdas = eigenvalue_avoiding_grid(spectra, 15);
      CHECK(superadditivity_check(whole, parts, lambdas).passed());
    }
  }
}

TEST_CASE("parts one lattice gap apart are rejected: the bilaplacian couples them") {
  // Dense oracle: B = [[20, 1], [1, 20]] has eigenvalues 19 and 21 while each
  // single-node part has 20, so N_bl at ω² = 20.5 is 1 < 1 + 1.
  const GridMask whole(1.0, 2, {{0, 0}, {2, 0}});
  const auto values = testing::dense_eigenvalues(assemble_clamped_bilaplacian(whole).matrix());
  CHECK(values[0] == doctest::Approx(19.0));
  CHECK(values[1] == doctest::Approx(21.0));
  const std::array<GridMask, 2> parts{GridMask(1.0, 2, {{0, 0}}), GridMask(1.0, 2, {{2, 0}})};
  const std::array<double, 1> lambda{std::sqrt(20.5)};
  CHECK_THROWS_AS(superadditivity_check(whole, parts, lambda), InputError);
  const std::array<GridMask, 1> stranger{GridMask(1.0, 2, {{9, 9}})};
  CHECK_THROWS_AS(require_separated_parts(whole, stranger), InputError);
}

TEST_CASE("cube lower bound") {
  const auto cover = cube_cover(DomainSpec::rectangle(1.0, 1.0), 0.25 * std::sqrt(2.0));
  REQUIRE(cover.cubes.size() == 16);
  CHECK(cube_lower_bound(cover, 50.0) == 0);
  // Side-1/4 square: π²·16(m² + n²) < 1e5 by direct enumeration.
  long per_cube = 0;
  for (long m = 1; m < 100; ++m) {
    for (long n = 1; n < 100; ++n) per_cube += 16.0 * kPi2 * (m * m + n * n) < 1e5 ? 1 : 0;
  }
  CHECK(cube_lower_bound(cover, 1e5) == 16 * per_cube);
  CHECK_THROWS_AS(cube_lower_bound(CubeCover{}, 1.0), InputError);
}

TEST_CASE("cube lower bound never exceeds the grid count in the trust region") {
  const auto disk = DomainSpec::disk(1.0);
  const auto cover = cube_cover(disk, 0.15);
  const auto mask = rasterize(disk, 1.0 / 48);
  const auto op = assemble_dirichlet_laplacian(mask);
  SolverOptions options;
  options.shift_retries = 3;
  for (double lambda = 50.0; lambda * mask.h() * mask.h() <= kTrustDispersion; lambda *= 1.6) {
    CHECK(cube_lower_bound(cover, lambda) <= inertia_count_with_retry(op, lambda, options));
  }
}

TEST_CASE("heat trace samples") {
  const std::array<double, 1> one{1.0};
  const auto single = heat_trace(analytic({1.0}), one);
  CHECK(single.values[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(single.tail_bounds[0] == 0.0);
  CHECK(single.trusted[0]);

  const auto square = rectangle_spectrum(1.0, 1.0, 1e6);
  const std::array<double, 3> times{1e-3, 1e-2, 10.0};
  const auto samples = heat_trace(square, times, TailModel{2, 1.0});
  const double scaled = 4.0 * kPi * 1e-3 * samples.values[0];
  CHECK(scaled >= 0.85);
  CHECK(scaled <= 0.95);
  CHECK(scaled == doctest::Approx(1.0 - 2.0 * std::sqrt(kPi * 1e-3)).epsilon(0.005));
  CHECK(samples.values[2] == doctest::Approx(std::exp(-2.0 * kPi2 * 10.0)).epsilon(1e-12));
  CHECK(samples.values[0] > samples.values[1]);
  CHECK(samples.trusted_count() == 3);
  CHECK_THROWS_AS(heat_trace(square, std::array<double, 1>{0.0}), InputError);
}

TEST_CASE("tail bound equals the Weyl-density integral") {
  // ∫_Λ^∞ e^{-tλ} d(C λ^{n/2}) by the midpoint rule in u = tλ.
  for (const int n : {1, 2, 3}) {
    const double t = 2e-4, cutoff = 5e4, vol = 1.5;
    const double c = std::pow(4.0 * kPi, -0.5 * n) * vol / std::tgamma(0.5 * n + 1.0);
    double integral = 0.0;
    const double du = 1e-4;
    for (double u = t * cutoff + 0.5 * du; u < t * cutoff + 60.0; u += du) {
      integral += std::exp(-u) * c * 0.5 * n * std::pow(u / t, 0.5 * n - 1.0) / t * du;
    }
    const std::array<double, 1> times{t};
    const auto samples =
        heat_trace(Spectrum(Problem::dirichlet, {1.0}, cutoff, SpectrumSource::analytic()), times,
                   TailModel{n, vol});
    CHECK(samples.tail_bounds[0] == doctest::Approx(integral).epsilon(1e-6));
  }
  CHECK(upper_incomplete_gamma_half(2, 3.0) == doctest::Approx(std::exp(-3.0)));
  CHECK(upper_incomplete_gamma_half(1, 0.0) == doctest::Approx(std::sqrt(kPi)));
  CHECK(upper_incomplete_gamma_half(5, 0.0) == doctest::Approx(std::tgamma(2.5)));
}

TEST_CASE("untrusted samples when the tail dominates") {
  const auto truncated = rectangle_spectrum(1.0, 1.0, 1e3);
  const std::array<double, 2> times{1e-4, 1.0};
  const auto samples = heat_trace(truncated, times, TailModel{2, 1.0});
  CHECK_FALSE(samples.trusted[0]);
  CHECK(samples.trusted[1]);
  CHECK_FALSE(heat_trace(truncated, times).trusted[1]);
}

TEST_CASE("Laplace identity") {
  CHECK(laplace_identity_check(analytic({1.0, 2.0}), 1.0) <= 1e-14);
  CHECK(laplace_identity_check(analytic({}), 1.0) == 0.0);
  const auto square = rectangle_spectrum(1.0, 1.0, 1e5);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> log_t(std::log(1e-4), std::log(10.0));
  for (int k = 0; k < 20; ++k) {
    CHECK(laplace_identity_check(square, std::exp(log_t(rng))) <= 1e-12);
  }
  const auto grid = lowest_k(assemble_dirichlet_laplacian(rasterize(DomainSpec::disk(1.0), 0.05)), 40, 1e-10);
  CHECK(laplace_identity_check(grid, 0.01) <= 1e-12);
}

TEST_CASE("heat upper bound") {
  const auto square = rectangle_spectrum(1.0, 1.0, 1e6);
  const auto times = log_spaced(1e-3, 1.0, 25);
  const auto report = heat_upper_bound_check(heat_trace(square, times, TailModel{2, 1.0}), 2, 1.0);
  CHECK(report.passed());
  CHECK_FALSE(report.advisory);

  const auto line = interval_spectrum(1.0, 1e7);
  CHECK(heat_upper_bound_check(heat_trace(line, log_spaced(1e-4, 1.0, 20), TailModel{1, 1.0}), 1, 1.0).passed());

  const std::array<double, 1> late{1e3};
  CHECK(heat_upper_bound_check(heat_trace(analytic({1.0}), late), 2, 1.0).passed());

  // Too many small eigenvalues for the claimed volume.
  const auto crowded = analytic(std::vector<double>(50, 1.0));
  const std::array<double, 1> t{0.5};
  CHECK_THROWS_AS(heat_upper_bound_check(heat_trace(crowded, t), 2, 1.0), InvariantViolation);
  const Spectrum grid(Problem::dirichlet, std::vector<double>(50, 1.0), Spectrum::kComplete,
                      SpectrumSource::grid(0.1));
  const auto advisory = heat_upper_bound_check(heat_trace(grid, t), 2, 1.0);
  CHECK(advisory.advisory);
  CHECK_FALSE(advisory.passed());
}

TEST_CASE("Karamata estimate") {
  const auto times = log_spaced(1e-3, 1e-2, 24);
  SUBCASE("synthetic lambda_j = j") {
    std::vector<double> values;
    for (double t : times) values.push_back(1.0 / std::expm1(t));
    const auto estimate = karamata_estimate(heat_samples(times, values), 2);
    CHECK(estimate.coefficient == doctest::Approx(1.0).epsilon(0.005));
    CHECK(estimate.samples_used == 24);
    CHECK(estimate.condition < kMaxFitCondition);
  }
  SUBCASE("unit square, doubled spectrum, doubled volume") {
    const auto square = rectangle_spectrum(1.0, 1.0, 1e6);
    const auto samples = heat_trace(square, times, TailModel{2, 1.0});
    const auto estimate = karamata_estimate(samples, 2);
    CHECK(estimate.coefficient == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(0.02));
    CHECK(estimate.counting_constant == doctest::Approx(weyl_constant(2, 1.0)).epsilon(0.02));
    CHECK(estimate.window.first == doctest::Approx(1e-3));

    auto doubled = square.values();
    for (double& v : doubled) v *= 2.0;
    const auto scaled = karamata_estimate(
        heat_trace(Spectrum(Problem::dirichlet, doubled, 2e6, SpectrumSource::analytic()), times,
                   TailModel{2, 0.5}),
        2);
    CHECK(scaled.coefficient == doctest::Approx(0.5 * estimate.coefficient).epsilon(0.02));

    const auto wide = rectangle_spectrum(2.0, 1.0, 1e6);
    const auto twice = karamata_estimate(heat_trace(wide, times, TailModel{2, 2.0}), 2);
    CHECK(twice.coefficient == doctest::Approx(2.0 * estimate.coefficient).epsilon(0.02));
  }
  SUBCASE("interval, n = 1") {
    const auto line = interval_spectrum(1.0, 1e8);
    const auto estimate = karamata_estimate(heat_trace(line, log_spaced(1e-4, 1e-2, 20), TailModel{1, 1.0}), 1);
    CHECK(estimate.coefficient == doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(0.01));
  }
  SUBCASE("preconditions") {
    std::vector<double> few_t(times.begin(), times.begin() + 5), few_h;
    for (double t : few_t) few_h.push_back(1.0 / t);
    CHECK_THROWS_AS(karamata_estimate(heat_samples(few_t, few_h), 2), InputError);
    const auto narrow = log_spaced(1e-3, 5e-3, 10);
    std::vector<double> narrow_h;
    for (double t : narrow) narrow_h.push_back(1.0 / t);
    CHECK_THROWS_AS(karamata_estimate(heat_samples(narrow, narrow_h), 2), InputError);
    // Only two distinct times: the three-column design is singular.
    std::vector<double> two_t(9, 1e-3), two_h(9, 1e3);
    two_t.back() = 1e-2;
    two_h.back() = 1e2;
    CHECK_THROWS_AS(karamata_estimate(heat_samples(two_t, two_h), 2), NumericalError);
  }
}

TEST_CASE("Weyl ratio curves") {
  const auto square = rectangle_spectrum(1.0, 1.0, 1e5);
  const std::array<double, 2> lambdas{1e5, kPi2};
  const auto rows = weyl_ratio_curve(square, 2, 1.0, lambdas);
  CHECK(rows[0].ratio == doctest::Approx(1.0 - 4.0 / std::sqrt(1e5)).epsilon(0.002));
  CHECK(rows[1].count == 0);
  CHECK(rows[1].ratio == 0.0);

  std::vector<double> exact;
  const double c = weyl_constant(2, 1.0);
  for (int j = 1; j <= 2000; ++j) exact.push_back(j / c);
  const std::array<double, 1> at{1000.5 / c};
  const auto synthetic = weyl_ratio_curve(analytic(exact), 2, 1.0, at);
  CHECK(std::abs(synthetic[0].ratio - 1.0) <= 1.0 / synthetic[0].count);

  const auto mask = rasterize(DomainSpec::rectangle(1.0, 1.0), 0.1);
  const auto grid = dense_spectrum(assemble_dirichlet_laplacian(mask));
  const std::array<double, 2> mixed{20.0, 100.0};
  const auto flagged = weyl_ratio_curve(grid, 2, 1.0, mixed);
  CHECK(flagged[0].trusted);
  CHECK_FALSE(flagged[1].trusted);
}

TEST_CASE("three-problem ratio table is ordered") {
  const auto mask = testing::random_mask(2, 12, 1.0 / 13);
  const auto n = static_cast<Eigen::Index>(mask.size());
  const auto d = dense_spectrum(assemble_dirichlet_laplacian(mask));
  const auto bl = dense_spectrum(assemble_clamped_bilaplacian(mask), Problem::bilaplacian_root);
  const auto b = generalized_spectrum(assemble_buckling_pencil(mask), n);
  const std::array<Spectrum, 3> all{d, bl, b};
  const auto lambdas = eigenvalue_avoiding_grid(all, 25);
  for (const auto& row : weyl_ratio_table(d, bl, b, 2, mask.volume(), lambdas)) {
    CHECK(row.ordered);
    CHECK(row.ratio_buckling <= row.ratio_bilaplacian);
    CHECK(row.ratio_bilaplacian <= row.ratio_dirichlet);
  }
}

TEST_CASE("log spacing and parallel loop") {
  const auto t = log_spaced(1e-3, 1e-1, 3);
  CHECK(t[0] == 1e-3);
  CHECK(t[1] == doctest::Approx(1e-2));
  CHECK(t[2] == 1e-1);
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw InputError("seven");
                  }),
                  InputError);
}
