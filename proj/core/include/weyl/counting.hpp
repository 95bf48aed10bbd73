#pragma once

#include <array>
#include <span>
#include <vector>

#include "weyl/spectrum.hpp"

namespace weyl {

/// Γ(m/2) for integer m ≥ 1 by the half-integer recursion from Γ(1/2) = √π
/// and Γ(1) = 1.
double gamma_half_integer(int twice_argument);

/// (4π)^{-n/2} / Γ(n/2 + 1) · volume: the leading Weyl coefficient of
/// N(λ) ~ C λ^{n/2}.
double weyl_constant(int dimension, double volume);

/// #{j : value_j < λ}. Throws InputError for λ above the spectrum's cutoff.
long counting(const Spectrum& spectrum, double lambda);

/// Grid eigenvalues are read as continuum data only while λh² stays below this.
inline constexpr double kTrustDispersion = 0.25;

/// λ lies in the region where a grid spectrum approximates the continuum one.
bool within_trust_region(const Spectrum& spectrum, double lambda) noexcept;

struct WeylRatioRow {
  double lambda = 0.0;
  long count = 0;
  /// N(λ) / (C_W λ^{n/2}).
  double ratio = 0.0;
  bool trusted = true;
};

std::vector<WeylRatioRow> weyl_ratio_curve(const Spectrum& spectrum, int dimension, double volume,
                                           std::span<const double> lambdas);

/// Weyl ratios of the three problems on one domain. The discrete inequality
/// chain forces ratio_b ≤ ratio_bl ≤ ratio_D at every λ.
struct ProblemRatioRow {
  double lambda = 0.0;
  long dirichlet = 0;
  long bilaplacian = 0;
  long buckling = 0;
  double ratio_dirichlet = 0.0;
  double ratio_bilaplacian = 0.0;
  double ratio_buckling = 0.0;
  bool trusted = true;
  bool ordered = true;
};

std::vector<ProblemRatioRow> weyl_ratio_table(const Spectrum& dirichlet,
                                              const Spectrum& bilaplacian_root,
                                              const Spectrum& buckling, int dimension,
                                              double volume, std::span<const double> lambdas);

}  // namespace weyl
