#pragma once

#include <array>
#include <span>
#include <vector>

#include "weyl/domain.hpp"
#include "weyl/grid_mask.hpp"

namespace weyl {

/// True iff the point lies in the open set (boundary excluded). Throws
/// InputError on dimension mismatch.
bool membership(const DomainSpec& spec, std::span<const double> point);

/// Exact closed-form volume for analytic kinds (the untruncated cusp area
/// 1/(p-1)); N·h^n for rasters.
double volume(const DomainSpec& spec);

struct VolumeReport {
  double value = 0.0;
  /// ± band: perimeter cells for rasters, zero for closed forms.
  double uncertainty = 0.0;
  /// Area lost to X_max truncation of cusp members: X_max^{1-p}/(p-1).
  double truncation_deficit = 0.0;
};

VolumeReport volume_report(const DomainSpec& spec);

/// Bounding box of the (truncated) domain.
Box bounding_box(const DomainSpec& spec);

/// Interior nodes are the lattice points h·(i, j) that pass membership (and,
/// for cusps, have x < X_max). Throws InputError if no node is interior.
GridMask rasterize(const DomainSpec& spec, double h);

/// Exact Euclidean distance from each interior node (indexed as in the mask)
/// to the nearest non-interior lattice node, in physical units.
std::vector<double> distance_to_complement(const GridMask& mask);

/// Nodes whose distance to the complement exceeds eta. May be empty.
GridMask inner_domain(const GridMask& mask, double eta);

struct Cube {
  std::array<double, 2> corner{0.0, 0.0};
};

/// Lattice cubes of side eta/√n lying inside Ω.
struct CubeCover {
  double eta = 0.0;
  double side = 0.0;
  int dimension = 2;
  std::vector<Cube> cubes;
  double covered_volume = 0.0;

  bool empty() const noexcept { return cubes.empty(); }
};

/// Samples per axis in the cube-inside test (corners included).
inline constexpr int kCubeSamplesPerAxis = 10;

/// Covers ℝ^n by the lattice of cubes of side eta/√n anchored at the origin and
/// keeps those whose kCubeSamplesPerAxis^n sample points (including the
/// corners, pulled inward by 1e-9·side) all pass membership.
CubeCover cube_cover(const DomainSpec& spec, double eta);

}  // namespace weyl
