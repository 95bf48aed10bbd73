#include "weyl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "weyl/errors.hpp"

namespace weyl {

const char* to_string(Problem problem) noexcept {
  switch (problem) {
    case Problem::dirichlet: return "dirichlet";
    case Problem::buckling: return "buckling";
    case Problem::bilaplacian_root: return "bilaplacian_root";
  }
  return "unknown";
}

Spectrum::Spectrum(Problem problem, std::vector<double> values, double cutoff,
                   SpectrumSource source)
    : problem_(problem), values_(std::move(values)), cutoff_(cutoff), source_(source) {
  if (std::isnan(cutoff_)) throw InputError("spectrum cutoff is NaN");
  std::sort(values_.begin(), values_.end());
  for (const double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("spectrum values must be positive and finite, got " + std::to_string(v));
    }
  }
  if (!values_.empty() && values_.back() > cutoff_) {
    throw InputError("spectrum value " + std::to_string(values_.back()) + " exceeds cutoff " +
                     std::to_string(cutoff_));
  }
}

void write_spectrum(std::ostream& out, const Spectrum& spectrum) {
  const auto old_precision = out.precision(17);
  out << "# problem=" << to_string(spectrum.problem()) << " h=" << spectrum.source().h
      << " cutoff=";
  if (std::isinf(spectrum.cutoff())) {
    out << "inf";
  } else {
    out << spectrum.cutoff();
  }
  out << '\n' << "index,value\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    out << (k + 1) << ',' << spectrum.values()[k] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace weyl
