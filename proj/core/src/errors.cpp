#include "weyl/errors.hpp"

#include <sstream>
#include <utility>

namespace weyl {

namespace {

std::string shift_message(double shift, double pivot, double scale) {
  std::ostringstream os;
  os.precision(17);
  os << "shift too close to spectrum: shift=" << shift << " pivot=" << pivot
     << " scale=" << scale;
  return os.str();
}

}  // namespace

ShiftTooCloseError::ShiftTooCloseError(double shift, double pivot, double scale)
    : NumericalError(shift_message(shift, pivot, scale)), shift_(shift), pivot_(pivot) {}

NonConvergenceError::NonConvergenceError(const std::string& what, std::vector<double> residuals)
    : NumericalError(what), residuals_(std::move(residuals)) {}

}  // namespace weyl
