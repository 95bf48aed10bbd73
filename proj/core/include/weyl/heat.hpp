#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "weyl/spectrum.hpp"

namespace weyl {

/// Weyl-density model for the eigenvalues missing above a spectrum's cutoff.
struct TailModel {
  int dimension = 2;
  double volume = 1.0;
};

/// Samples whose modeled tail exceeds this fraction of the partial sum are
/// untrusted.
inline constexpr double kTailTrustRatio = 0.01;

struct HeatTraceSamples {
  std::vector<double> times;
  /// h(t) = Σ_j exp(-t λ_j) over the available values.
  std::vector<double> values;
  /// Upper estimate of Σ over eigenvalues ≥ cutoff.
  std::vector<double> tail_bounds;
  std::vector<bool> trusted;
  SpectrumSource source;

  std::size_t size() const noexcept { return times.size(); }
  std::size_t trusted_count() const noexcept;
};

/// Γ(m/2, x) for integer m ≥ 1: Γ(1/2, x) = √π erfc(√x), Γ(1, x) = e^{-x},
/// Γ(s+1, x) = s Γ(s, x) + x^s e^{-x}.
double upper_incomplete_gamma_half(int twice_s, double x);

/// Partial sums of the heat trace. With a finite cutoff Λ the tail bound is the
/// Weyl-density integral ∫_Λ^∞ e^{-tλ} d(C_W λ^{n/2}) = (4πt)^{-n/2}|Ω| Γ(n/2, tΛ)/Γ(n/2),
/// which tends to the free-space bound as Λ → 0. Without a tail model a finite
/// cutoff yields an infinite bound (untrusted). Complete spectra have zero tail.
HeatTraceSamples heat_trace(const Spectrum& spectrum, std::span<const double> times,
                            std::optional<TailModel> tail = std::nullopt);

/// Samples from closed-form trace values (zero tail, all trusted).
HeatTraceSamples heat_samples(std::span<const double> times, std::span<const double> values,
                              SpectrumSource source = SpectrumSource::synthetic());

/// Relative residual |h(t) − RHS| / h(t) of the integration-by-parts identity
/// h(t) = t ∫_0^Λ e^{-tλ} N(λ) dλ + e^{-tΛ} N(Λ), both sides over the values
/// strictly below Λ and the integral evaluated piecewise on the steps of N. Returns 0 for an empty
/// spectrum.
double laplace_identity_check(const Spectrum& spectrum, double t);

struct HeatBoundRow {
  double t = 0.0;
  /// t^{n/2}(h(t) + tail_bound).
  double scaled = 0.0;
  /// (4π)^{-n/2}|Ω|.
  double bound = 0.0;
  bool trusted = true;
  bool pass = true;
};

struct HeatBoundReport {
  std::vector<HeatBoundRow> rows;
  /// Grid spectra: reported, never enforced.
  bool advisory = false;
  double tolerance = 0.0;

  bool passed() const noexcept;
};

/// t^{n/2}(h + tail) ≤ (4π)^{-n/2}|Ω|(1 + tol) at every trusted sample. Throws
/// InvariantViolation on failure for analytic and synthetic spectra.
HeatBoundReport heat_upper_bound_check(const HeatTraceSamples& samples, int dimension,
                                       double volume, double tol = 1e-9);

struct WeylEstimate {
  /// Fitted a in h(t) ≈ a t^{-n/2} + b t^{-(n-1)/2} + c: estimates (4π)^{-n/2}|Ω|.
  double coefficient = 0.0;
  /// a / Γ(n/2 + 1): the implied counting-function constant.
  double counting_constant = 0.0;
  double boundary_coefficient = 0.0;
  double offset = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  /// RMS relative residual of the fit.
  double residual = 0.0;
  /// Condition number of the column-scaled normal matrix.
  double condition = 0.0;
  std::size_t samples_used = 0;
};

inline constexpr double kMaxFitCondition = 1e12;
inline constexpr std::size_t kMinFitSamples = 8;

/// Relative least-squares fit on the trusted samples inside `window` (all
/// trusted samples when omitted). Needs ≥ 8 samples spanning a decade in t;
/// throws NumericalError when the normal matrix condition exceeds 1e12.
WeylEstimate karamata_estimate(const HeatTraceSamples& samples, int dimension,
                               std::optional<std::pair<double, double>> window = std::nullopt);

/// `count` points log-uniformly spaced over [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace weyl
