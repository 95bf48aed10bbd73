#include "weyl/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "weyl/errors.hpp"

namespace weyl {

double gamma_half_integer(int twice_argument) {
  if (twice_argument < 1) throw InputError("gamma_half_integer needs a positive argument");
  double value = twice_argument % 2 == 0 ? 1.0 : std::sqrt(std::numbers::pi);
  // Γ(s + 1) = s Γ(s), climbing from s = 1 or s = 1/2.
  for (int twice_s = twice_argument % 2 == 0 ? 2 : 1; twice_s + 2 <= twice_argument; twice_s += 2) {
    value *= 0.5 * twice_s;
  }
  return value;
}

double weyl_constant(int dimension, double volume) {
  if (dimension < 1) throw InputError("weyl_constant needs n >= 1");
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw InputError("weyl_constant needs a positive finite volume");
  }
  const double free = std::pow(4.0 * std::numbers::pi, -0.5 * dimension);
  return free / gamma_half_integer(dimension + 2) * volume;
}

long counting(const Spectrum& spectrum, double lambda) {
  if (lambda > spectrum.cutoff()) {
    throw InputError("counting at lambda=" + std::to_string(lambda) +
                     " above the spectrum cutoff " + std::to_string(spectrum.cutoff()));
  }
  const auto& values = spectrum.values();
  return static_cast<long>(std::lower_bound(values.begin(), values.end(), lambda) - values.begin());
}

bool within_trust_region(const Spectrum& spectrum, double lambda) noexcept {
  if (spectrum.source().kind != SpectrumSource::Kind::grid) return true;
  const double h = spectrum.source().h;
  return lambda * h * h <= kTrustDispersion;
}

std::vector<WeylRatioRow> weyl_ratio_curve(const Spectrum& spectrum, int dimension, double volume,
                                           std::span<const double> lambdas) {
  const double constant = weyl_constant(dimension, volume);
  std::vector<WeylRatioRow> rows;
  rows.reserve(lambdas.size());
  for (const double lambda : lambdas) {
    if (!(lambda > 0.0)) throw InputError("Weyl ratio needs lambda > 0");
    WeylRatioRow row;
    row.lambda = lambda;
    row.count = counting(spectrum, lambda);
    row.ratio = static_cast<double>(row.count) / (constant * std::pow(lambda, 0.5 * dimension));
    row.trusted = within_trust_region(spectrum, lambda);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ProblemRatioRow> weyl_ratio_table(const Spectrum& dirichlet,
                                              const Spectrum& bilaplacian_root,
                                              const Spectrum& buckling, int dimension,
                                              double volume, std::span<const double> lambdas) {
  const auto d = weyl_ratio_curve(dirichlet, dimension, volume, lambdas);
  const auto bl = weyl_ratio_curve(bilaplacian_root, dimension, volume, lambdas);
  const auto b = weyl_ratio_curve(buckling, dimension, volume, lambdas);
  std::vector<ProblemRatioRow> rows(lambdas.size());
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    auto& row = rows[k];
    row.lambda = lambdas[k];
    row.dirichlet = d[k].count;
    row.bilaplacian = bl[k].count;
    row.buckling = b[k].count;
    row.ratio_dirichlet = d[k].ratio;
    row.ratio_bilaplacian = bl[k].ratio;
    row.ratio_buckling = b[k].ratio;
    row.trusted = d[k].trusted && bl[k].trusted && b[k].trusted;
    row.ordered = row.ratio_buckling <= row.ratio_bilaplacian &&
                  row.ratio_bilaplacian <= row.ratio_dirichlet;
  }
  return rows;
}

}  // namespace weyl
