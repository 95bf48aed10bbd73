#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace weyl {

enum class Problem { dirichlet, buckling, bilaplacian_root };

const char* to_string(Problem problem) noexcept;

struct SpectrumSource {
  enum class Kind { grid, analytic, synthetic };
  Kind kind = Kind::analytic;
  /// Grid spacing for Kind::grid, zero otherwise.
  double h = 0.0;

  static SpectrumSource grid(double h) { return {Kind::grid, h}; }
  static SpectrumSource analytic() { return {Kind::analytic, 0.0}; }
  static SpectrumSource synthetic() { return {Kind::synthetic, 0.0}; }
};

/// Ascending positive eigenvalues, complete below `cutoff`: every eigenvalue
/// strictly less than the cutoff is present. For bilaplacian_root spectra the
/// stored values are ω_j, the square roots of the operator eigenvalues.
class Spectrum {
 public:
  static constexpr double kComplete = std::numeric_limits<double>::infinity();

  /// Sorts the values; throws InputError if any is not positive and finite or
  /// exceeds the cutoff.
  Spectrum(Problem problem, std::vector<double> values, double cutoff, SpectrumSource source);

  Problem problem() const noexcept { return problem_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double cutoff() const noexcept { return cutoff_; }
  const SpectrumSource& source() const noexcept { return source_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

 private:
  Problem problem_;
  std::vector<double> values_;
  double cutoff_;
  SpectrumSource source_;
};

/// Text table: comment header "# problem=<tag> h=<h> cutoff=<Λ>", then
/// "index,value" and one 1-based row per eigenvalue.
void write_spectrum(std::ostream& out, const Spectrum& spectrum);

}  // namespace weyl
