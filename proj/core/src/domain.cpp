#include "weyl/domain.hpp"

#include <cmath>
#include <string>

#include "weyl/errors.hpp"
#include "weyl/geometry.hpp"

namespace weyl {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InputError(std::string(what) + " must be positive and finite, got " +
                     std::to_string(value));
  }
}

bool boxes_overlap(const Box& a, const Box& b, int dimension) {
  for (int axis = 0; axis < dimension; ++axis) {
    if (!(a.lo[axis] < b.hi[axis] && b.lo[axis] < a.hi[axis])) return false;
  }
  return true;
}

Box translated(Box box, const std::array<double, 2>& offset) {
  for (int axis = 0; axis < 2; ++axis) {
    box.lo[axis] += offset[axis];
    box.hi[axis] += offset[axis];
  }
  return box;
}

}  // namespace

DomainSpec DomainSpec::interval(double length) {
  require_positive(length, "interval length");
  DomainSpec spec(Kind::interval, 1);
  spec.p0_ = length;
  return spec;
}

DomainSpec DomainSpec::rectangle(double width, double height) {
  require_positive(width, "rectangle width");
  require_positive(height, "rectangle height");
  DomainSpec spec(Kind::rectangle, 2);
  spec.p0_ = width;
  spec.p1_ = height;
  return spec;
}

DomainSpec DomainSpec::disk(double radius) {
  require_positive(radius, "disk radius");
  DomainSpec spec(Kind::disk, 2);
  spec.p0_ = radius;
  return spec;
}

DomainSpec DomainSpec::cusp(double exponent, double x_max) {
  if (!(exponent > 1.0) || !std::isfinite(exponent)) {
    throw InputError("cusp exponent p must exceed 1 for finite area, got " +
                     std::to_string(exponent));
  }
  if (!(x_max > 1.0) || !std::isfinite(x_max)) {
    throw InputError("cusp truncation x_max must exceed 1, got " + std::to_string(x_max));
  }
  DomainSpec spec(Kind::cusp, 2);
  spec.p0_ = exponent;
  spec.p1_ = x_max;
  return spec;
}

DomainSpec DomainSpec::union_of(std::vector<UnionPart> parts) {
  if (parts.empty()) throw InputError("union needs at least one part");
  const int dimension = parts.front().domain.dimension();
  std::vector<Box> boxes;
  boxes.reserve(parts.size());
  for (const auto& part : parts) {
    if (part.domain.dimension() != dimension) {
      throw InputError("union parts must share one dimension");
    }
    boxes.push_back(translated(bounding_box(part.domain), part.offset));
  }
  for (std::size_t a = 0; a < boxes.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      if (boxes_overlap(boxes[a], boxes[b], dimension)) {
        throw InputError("union parts " + std::to_string(a) + " and " + std::to_string(b) +
                         " have overlapping bounding boxes; members must be disjoint");
      }
    }
  }
  DomainSpec spec(Kind::union_of, dimension);
  spec.parts_ = std::move(parts);
  return spec;
}

DomainSpec DomainSpec::raster(GridMask mask) {
  if (mask.empty()) throw InputError("raster domain needs a nonempty mask");
  DomainSpec spec(Kind::raster, mask.dimension());
  spec.mask_ = std::make_shared<const GridMask>(std::move(mask));
  return spec;
}

const char* to_string(DomainSpec::Kind kind) noexcept {
  switch (kind) {
    case DomainSpec::Kind::interval: return "interval";
    case DomainSpec::Kind::rectangle: return "rectangle";
    case DomainSpec::Kind::disk: return "disk";
    case DomainSpec::Kind::cusp: return "cusp";
    case DomainSpec::Kind::union_of: return "union";
    case DomainSpec::Kind::raster: return "raster";
  }
  return "unknown";
}

}  // namespace weyl
