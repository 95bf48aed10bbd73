#pragma once

#include "weyl/errors.hpp"

namespace weyl {

template <typename Counted>
long inertia_count_with_retry(const Counted& target, double threshold,
                              const SolverOptions& options) {
  try {
    return inertia_count(target, threshold, options);
  } catch (const ShiftTooCloseError&) {
    if (options.shift_retries <= 0) throw;
  }
  for (int attempt = 1;; ++attempt) {
    const double factor = 1e-9 * attempt;
    for (const double sign : {-1.0, 1.0}) {
      try {
        return inertia_count(target, threshold * (1.0 + sign * factor), options);
      } catch (const ShiftTooCloseError&) {
        if (attempt >= options.shift_retries && sign > 0.0) throw;
      }
    }
  }
}

}  // namespace weyl
