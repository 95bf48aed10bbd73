#pragma once

#include <array>
#include <memory>
#include <vector>

#include "weyl/grid_mask.hpp"

namespace weyl {

struct UnionPart;

/// Axis-aligned box; the second coordinate is ignored in one dimension.
struct Box {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
};

/// An open set Ω ⊂ ℝ^n of finite volume, n ∈ {1, 2}.
///
///  - interval(a):        (0, a)
///  - rectangle(a, b):    (0, a) × (0, b)
///  - disk(R):            open disk of radius R centered at the origin
///  - cusp(p, X_max):     {x > 1, 0 < y < x^{-p}}, area 1/(p-1); X_max only
///                        truncates it for rasterization and cube enumeration
///  - union(parts):       disjoint translated members
///  - raster(mask):       interior of the union of closed h-cells centered at
///                        the mask's interior nodes
class DomainSpec {
 public:
  enum class Kind { interval, rectangle, disk, cusp, union_of, raster };

  static DomainSpec interval(double length);
  static DomainSpec rectangle(double width, double height);
  static DomainSpec disk(double radius);
  static DomainSpec cusp(double exponent, double x_max);
  /// Members must be pairwise disjoint; checked by box overlap (and node
  /// overlap for rasters). Throws InputError otherwise.
  static DomainSpec union_of(std::vector<UnionPart> parts);
  static DomainSpec raster(GridMask mask);

  Kind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }

  double width() const noexcept { return p0_; }
  double height() const noexcept { return p1_; }
  double radius() const noexcept { return p0_; }
  double exponent() const noexcept { return p0_; }
  double x_max() const noexcept { return p1_; }
  const std::vector<UnionPart>& parts() const noexcept { return parts_; }
  const GridMask& mask() const noexcept { return *mask_; }

 private:
  DomainSpec(Kind kind, int dimension) : kind_(kind), dimension_(dimension) {}

  Kind kind_;
  int dimension_;
  double p0_ = 0.0;
  double p1_ = 0.0;
  std::vector<UnionPart> parts_;
  std::shared_ptr<const GridMask> mask_;
};

struct UnionPart {
  DomainSpec domain;
  std::array<double, 2> offset{0.0, 0.0};
};

const char* to_string(DomainSpec::Kind kind) noexcept;

}  // namespace weyl
