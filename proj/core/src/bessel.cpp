#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "weyl/errors.hpp"
#include "weyl/oracles.hpp"

namespace weyl {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

constexpr double kZeroTolerance = 1e-10;

// Σ_m (-1)^m (x/2)^{2m+k} / (m! (m+k)!). Terms grow until m ≈ x/2 and then
// decay factorially; at x = 60 the largest term is ~1e25, so 50 digits leave
// more than 20 after cancellation.
Wide series(int order, double x) {
  const Wide half = Wide(x) / 2;
  const Wide half_sq = half * half;
  Wide term = 1;
  for (int j = 1; j <= order; ++j) term *= half / j;
  Wide sum = term;
  const int max_terms = 64 + static_cast<int>(2.0 * x) + order;
  for (int m = 1; m <= max_terms; ++m) {
    term *= -half_sq / (Wide(m) * Wide(m + order));
    sum += term;
    if (m > x && abs(term) < Wide("1e-45")) break;
  }
  return sum;
}

double bisect(int order, double lo, double hi) {
  double f_lo = bessel_j(order, lo);
  while (hi - lo > kZeroTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = bessel_j(order, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> order_zero_zeros(double x_max) {
  constexpr double kStep = 0.25;
  std::vector<double> zeros;
  double lo = kStep;
  double f_lo = bessel_j(0, lo);
  while (lo < x_max) {
    const double hi = std::min(lo + kStep, x_max);
    const double f_hi = bessel_j(0, hi);
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      const double z = bisect(0, lo, hi);
      if (z < x_max) zeros.push_back(z);
    }
    lo = hi;
    f_lo = f_hi;
  }
  return zeros;
}

// Interlacing j_{k,s} < j_{k+1,s} < j_{k,s+1}: each gap between consecutive
// zeros of J_k (and the tail up to x_max) holds at most one zero of J_{k+1}.
std::vector<double> next_order_zeros(int order, const std::vector<double>& previous, double x_max) {
  std::vector<double> zeros;
  for (std::size_t s = 0; s < previous.size(); ++s) {
    const double lo = previous[s];
    const double hi = s + 1 < previous.size() ? previous[s + 1] : x_max;
    const double f_lo = bessel_j(order, lo);
    const double f_hi = bessel_j(order, hi);
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      const double z = bisect(order, lo, hi);
      if (z < x_max) zeros.push_back(z);
    }
  }
  return zeros;
}

void require_bound(double x_max) {
  if (!(x_max > 0.0) || x_max > kBesselArgumentLimit) {
    throw InputError("Bessel zero bound outside (0, " + std::to_string(kBesselArgumentLimit) + "]");
  }
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0) throw InputError("bessel_j needs a nonnegative order");
  if (!(x >= 0.0) || x > kBesselArgumentLimit) {
    throw InputError("bessel_j argument " + std::to_string(x) + " outside [0, " +
                     std::to_string(kBesselArgumentLimit) + "]");
  }
  return series(order, x).convert_to<double>();
}

std::vector<double> bessel_zeros(int order, double x_max) {
  if (order < 0) throw InputError("bessel_zeros needs a nonnegative order");
  require_bound(x_max);
  std::vector<double> zeros = order_zero_zeros(x_max);
  for (int k = 1; k <= order && !zeros.empty(); ++k) zeros = next_order_zeros(k, zeros, x_max);
  return zeros;
}

std::vector<std::vector<double>> bessel_zero_table(double x_max) {
  require_bound(x_max);
  std::vector<std::vector<double>> table;
  std::vector<double> zeros = order_zero_zeros(x_max);
  for (int k = 0; !zeros.empty(); ++k) {
    table.push_back(zeros);
    zeros = next_order_zeros(k + 1, zeros, x_max);
  }
  return table;
}

}  // namespace weyl
