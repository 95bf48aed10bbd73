#include "weyl/oracles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

constexpr double kPiSquared = std::numbers::pi * std::numbers::pi;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InputError(std::string(what) + " must be positive and finite");
  }
}

double rectangle_value(long m, long n, double a, double b) {
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  return kPiSquared * (dm * dm / (a * a) + dn * dn / (b * b));
}

double interval_value(long k, double a) {
  const double dk = static_cast<double>(k);
  return kPiSquared * (dk * dk / (a * a));
}

}  // namespace

long rectangle_count(double a, double b, double lambda) {
  require_positive(a, "rectangle side a");
  require_positive(b, "rectangle side b");
  if (!(lambda > 0.0)) return 0;
  long count = 0;
  for (long m = 1; rectangle_value(m, 1, a, b) < lambda; ++m) {
    // Largest n with value < λ: start from the real root and correct.
    const double remaining = lambda / kPiSquared - static_cast<double>(m * m) / (a * a);
    long n = static_cast<long>(std::floor(b * std::sqrt(std::max(remaining, 0.0))));
    while (n > 0 && !(rectangle_value(m, n, a, b) < lambda)) --n;
    while (rectangle_value(m, n + 1, a, b) < lambda) ++n;
    count += n;
  }
  return count;
}

Spectrum rectangle_spectrum(double a, double b, double cutoff) {
  require_positive(a, "rectangle side a");
  require_positive(b, "rectangle side b");
  if (std::isnan(cutoff) || std::isinf(cutoff)) throw InputError("rectangle cutoff must be finite");
  std::vector<double> values;
  if (cutoff > 0.0) {
    values.reserve(static_cast<std::size_t>(std::max<long>(rectangle_count(a, b, cutoff), 0)));
    for (long m = 1; rectangle_value(m, 1, a, b) < cutoff; ++m) {
      for (long n = 1; rectangle_value(m, n, a, b) < cutoff; ++n) {
        values.push_back(rectangle_value(m, n, a, b));
      }
    }
  }
  return Spectrum(Problem::dirichlet, std::move(values), cutoff, SpectrumSource::analytic());
}

long interval_count(double a, double lambda) {
  require_positive(a, "interval length");
  long count = 0;
  while (interval_value(count + 1, a) < lambda) ++count;
  return count;
}

Spectrum interval_spectrum(double a, double cutoff) {
  require_positive(a, "interval length");
  if (std::isnan(cutoff) || std::isinf(cutoff)) throw InputError("interval cutoff must be finite");
  std::vector<double> values;
  for (long k = 1; interval_value(k, a) < cutoff; ++k) values.push_back(interval_value(k, a));
  return Spectrum(Problem::dirichlet, std::move(values), cutoff, SpectrumSource::analytic());
}

Spectrum disk_spectrum(double radius, double cutoff) {
  require_positive(radius, "disk radius");
  if (std::isnan(cutoff) || std::isinf(cutoff)) throw InputError("disk cutoff must be finite");
  std::vector<double> values;
  if (cutoff > 0.0) {
    const double x_max = radius * std::sqrt(cutoff);
    if (x_max > kBesselArgumentLimit) {
      throw InputError("disk spectrum: R*sqrt(cutoff)=" + std::to_string(x_max) +
                       " exceeds the validated Bessel range " +
                       std::to_string(kBesselArgumentLimit) + "; lower the cutoff");
    }
    const auto table = bessel_zero_table(x_max);
    for (std::size_t order = 0; order < table.size(); ++order) {
      for (const double j : table[order]) {
        const double value = j * j / (radius * radius);
        if (!(value < cutoff)) continue;
        values.push_back(value);
        if (order > 0) values.push_back(value);
      }
    }
  }
  return Spectrum(Problem::dirichlet, std::move(values), cutoff, SpectrumSource::analytic());
}

}  // namespace weyl
