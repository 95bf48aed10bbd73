#include "weyl/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "weyl/counting.hpp"
#include "weyl/errors.hpp"

namespace weyl {

namespace {

// Neumaier-compensated accumulation in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + carry_; }

 private:
  long double sum_ = 0.0L;
  long double carry_ = 0.0L;
};

long double partial_trace_ld(const std::vector<double>& values, double t) {
  CompensatedSum sum;
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    sum.add(std::exp(-static_cast<long double>(t) * static_cast<long double>(*it)));
  }
  return sum.value();
}

double partial_trace(const std::vector<double>& values, double t) {
  return static_cast<double>(partial_trace_ld(values, t));
}

void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InputError("heat-trace times must be positive and finite, got " + std::to_string(t));
  }
}

}  // namespace

std::size_t HeatTraceSamples::trusted_count() const noexcept {
  return static_cast<std::size_t>(std::count(trusted.begin(), trusted.end(), true));
}

double upper_incomplete_gamma_half(int twice_s, double x) {
  if (twice_s < 1) throw InputError("upper_incomplete_gamma_half needs s > 0");
  if (!(x >= 0.0)) throw InputError("upper_incomplete_gamma_half needs x >= 0");
  double s = twice_s % 2 == 0 ? 1.0 : 0.5;
  double value = twice_s % 2 == 0 ? std::exp(-x) : std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
  while (2.0 * s < twice_s) {
    value = s * value + std::pow(x, s) * std::exp(-x);
    s += 1.0;
  }
  return value;
}

HeatTraceSamples heat_trace(const Spectrum& spectrum, std::span<const double> times,
                            std::optional<TailModel> tail) {
  HeatTraceSamples samples;
  samples.source = spectrum.source();
  const double cutoff = spectrum.cutoff();
  for (const double t : times) {
    require_time(t);
    const double value = partial_trace(spectrum.values(), t);
    double tail_bound = 0.0;
    if (std::isfinite(cutoff)) {
      if (tail) {
        const int n = tail->dimension;
        const double free = std::pow(4.0 * std::numbers::pi * t, -0.5 * n) * tail->volume;
        tail_bound = free * upper_incomplete_gamma_half(n, t * std::max(cutoff, 0.0)) /
                     gamma_half_integer(n);
      } else {
        tail_bound = std::numeric_limits<double>::infinity();
      }
    }
    samples.times.push_back(t);
    samples.values.push_back(value);
    samples.tail_bounds.push_back(tail_bound);
    samples.trusted.push_back(value > 0.0 && tail_bound <= kTailTrustRatio * value);
  }
  return samples;
}

HeatTraceSamples heat_samples(std::span<const double> times, std::span<const double> values,
                              SpectrumSource source) {
  if (times.size() != values.size()) throw InputError("heat_samples: size mismatch");
  HeatTraceSamples samples;
  samples.source = source;
  for (std::size_t k = 0; k < times.size(); ++k) {
    require_time(times[k]);
    if (!(values[k] > 0.0)) throw InputError("heat_samples: trace values must be positive");
    samples.times.push_back(times[k]);
    samples.values.push_back(values[k]);
    samples.tail_bounds.push_back(0.0);
    samples.trusted.push_back(true);
  }
  return samples;
}

double laplace_identity_check(const Spectrum& spectrum, double t) {
  require_time(t);
  const auto& all = spectrum.values();
  if (all.empty()) return 0.0;
  const double upper = std::isfinite(spectrum.cutoff()) ? spectrum.cutoff() : 2.0 * all.back();
  // Both sides run over λ_j < Λ; a value sitting exactly at the cutoff is
  // outside the strict count N(Λ).
  const std::vector<double> v(all.begin(), std::lower_bound(all.begin(), all.end(), upper));
  if (v.empty()) return 0.0;
  const long double lt = t;

  const long double lhs = partial_trace_ld(v, t);

  // N(λ) = k on (v_k, v_{k+1}] (1-based), so t∫ e^{-tλ} k dλ over that step is
  // k (e^{-t v_k} − e^{-t v_{k+1}}); the last step ends at the cutoff.
  CompensatedSum rhs;
  const std::size_t m = v.size();
  for (std::size_t k = m; k >= 1; --k) {
    const long double a = v[k - 1];
    const long double b = k < m ? static_cast<long double>(v[k]) : static_cast<long double>(upper);
    const long double step = std::exp(-lt * a) * -std::expm1(-lt * (b - a));
    rhs.add(static_cast<long double>(k) * step);
  }
  rhs.add(static_cast<long double>(m) * std::exp(-lt * upper));
  return static_cast<double>(std::fabs(lhs - rhs.value()) / lhs);
}

bool HeatBoundReport::passed() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const HeatBoundRow& r) { return r.pass; });
}

HeatBoundReport heat_upper_bound_check(const HeatTraceSamples& samples, int dimension,
                                       double volume, double tol) {
  if (dimension < 1) throw InputError("heat bound needs n >= 1");
  if (!(volume > 0.0)) throw InputError("heat bound needs a positive volume");
  HeatBoundReport report;
  report.advisory = samples.source.kind == SpectrumSource::Kind::grid;
  report.tolerance = tol;
  const double bound = std::pow(4.0 * std::numbers::pi, -0.5 * dimension) * volume;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    HeatBoundRow row;
    row.t = samples.times[k];
    row.scaled = std::pow(row.t, 0.5 * dimension) * (samples.values[k] + samples.tail_bounds[k]);
    row.bound = bound;
    row.trusted = samples.trusted[k];
    row.pass = !row.trusted || row.scaled <= bound * (1.0 + tol);
    report.rows.push_back(row);
  }
  if (!report.advisory && !report.passed()) {
    std::ostringstream os;
    os.precision(17);
    os << "heat-trace upper bound violated:";
    for (const auto& row : report.rows) {
      if (!row.pass) os << " [t=" << row.t << " t^{n/2}h=" << row.scaled << " bound=" << row.bound << "]";
    }
    throw InvariantViolation(os.str());
  }
  return report;
}

WeylEstimate karamata_estimate(const HeatTraceSamples& samples, int dimension,
                               std::optional<std::pair<double, double>> window) {
  if (dimension < 1) throw InputError("karamata_estimate needs n >= 1");
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!samples.trusted[k]) continue;
    const double t = samples.times[k];
    if (window && (t < window->first || t > window->second)) continue;
    picked.push_back(k);
  }
  if (picked.size() < kMinFitSamples) {
    throw InputError("karamata_estimate needs at least " + std::to_string(kMinFitSamples) +
                     " trusted samples in the window, got " + std::to_string(picked.size()));
  }
  double t_min = std::numeric_limits<double>::infinity();
  double t_max = 0.0;
  for (const auto k : picked) {
    t_min = std::min(t_min, samples.times[k]);
    t_max = std::max(t_max, samples.times[k]);
  }
  if (t_max < 10.0 * t_min * (1.0 - 1e-12)) {
    throw InputError("karamata_estimate needs trusted samples spanning a decade in t");
  }

  // Model exponents of t^{-e}: leading n/2, boundary (n-1)/2, constant 0.
  std::vector<double> exponents{0.5 * dimension};
  if (dimension > 1) exponents.push_back(0.5 * (dimension - 1));
  exponents.push_back(0.0);
  const auto rows = static_cast<Eigen::Index>(picked.size());
  const auto cols = static_cast<Eigen::Index>(exponents.size());

  // Relative least squares: divide each row by h(t).
  Eigen::MatrixXd design(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = samples.times[picked[static_cast<std::size_t>(r)]];
    const double h = samples.values[picked[static_cast<std::size_t>(r)]];
    for (Eigen::Index c = 0; c < cols; ++c) {
      design(r, c) = std::pow(t, -exponents[static_cast<std::size_t>(c)]) / h;
    }
  }
  const Eigen::VectorXd scales = design.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = design * scales.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd normal = scaled.transpose() * scaled;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> normal_eigs(normal, Eigen::EigenvaluesOnly);
  const double lo = normal_eigs.eigenvalues().minCoeff();
  const double hi = normal_eigs.eigenvalues().maxCoeff();
  const double condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxFitCondition)) {
    throw NumericalError("karamata_estimate: ill-conditioned fit (condition " +
                         std::to_string(condition) + "); widen the window");
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(rows);
  const Eigen::VectorXd scaled_coeffs = scaled.colPivHouseholderQr().solve(ones);
  const Eigen::VectorXd coeffs = scaled_coeffs.cwiseQuotient(scales);

  WeylEstimate estimate;
  estimate.coefficient = coeffs[0];
  estimate.counting_constant = coeffs[0] / gamma_half_integer(dimension + 2);
  estimate.boundary_coefficient = dimension > 1 ? coeffs[1] : 0.0;
  estimate.offset = coeffs[cols - 1];
  estimate.window = {t_min, t_max};
  estimate.residual = std::sqrt((design * coeffs - ones).squaredNorm() / static_cast<double>(rows));
  estimate.condition = condition;
  estimate.samples_used = picked.size();
  if (!(estimate.coefficient > 0.0)) {
    throw NumericalError("karamata_estimate: nonpositive leading coefficient");
  }
  return estimate;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo)) throw InputError("log_spaced needs 0 < lo <= hi");
  std::vector<double> points(count);
  if (count == 1) {
    points[0] = lo;
    return points;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    points[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  points.front() = lo;
  points.back() = hi;
  return points;
}

}  // namespace weyl
