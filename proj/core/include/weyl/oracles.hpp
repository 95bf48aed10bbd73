#pragma once

#include <vector>

#include "weyl/spectrum.hpp"

namespace weyl {

/// Closed-form Dirichlet spectrum of (0, a) × (0, b): all π²(m²/a² + n²/b²) < cutoff,
/// with multiplicity.
Spectrum rectangle_spectrum(double a, double b, double cutoff);

/// #{(m, n) ≥ 1 : π²(m²/a² + n²/b²) < λ} without materializing the values;
/// agrees exactly with counting(rectangle_spectrum(a, b, Λ), λ) for λ ≤ Λ.
long rectangle_count(double a, double b, double lambda);

/// k²π²/a² < cutoff.
Spectrum interval_spectrum(double a, double cutoff);

long interval_count(double a, double lambda);

/// Bessel arguments up to this bound are evaluated from the power series.
inline constexpr double kBesselArgumentLimit = 60.0;

/// J_order(x) from its ascending series, summed in 50-digit arithmetic.
/// Throws InputError for x outside [0, kBesselArgumentLimit].
double bessel_j(int order, double x);

/// Positive zeros of J_order strictly below x_max, to 1e-10 absolute.
std::vector<double> bessel_zeros(int order, double x_max);

/// Row k holds the zeros of J_k below x_max; rows stop at the first order
/// without one.
std::vector<std::vector<double>> bessel_zero_table(double x_max);

/// Dirichlet disk spectrum j_{k,l}²/R² < cutoff; multiplicity 2 for k ≥ 1.
/// Throws InputError if R·√cutoff exceeds kBesselArgumentLimit.
Spectrum disk_spectrum(double radius, double cutoff);

}  // namespace weyl
