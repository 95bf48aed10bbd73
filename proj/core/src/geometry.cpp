#include "weyl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

using Point = std::array<double, 2>;

bool raster_contains(const GridMask& mask, const Point& p) {
  // Open interior of the union of closed cells [h(i-1/2), h(i+1/2)]^n: every
  // cell whose closure holds the point must be interior.
  const double h = mask.h();
  std::array<long, 2> lo{0, 0};
  std::array<long, 2> hi{0, 0};
  for (int axis = 0; axis < mask.dimension(); ++axis) {
    const double u = p[axis] / h;
    lo[axis] = static_cast<long>(std::ceil(u - 0.5));
    hi[axis] = static_cast<long>(std::floor(u + 0.5));
  }
  for (long j = lo[1]; j <= hi[1]; ++j) {
    for (long i = lo[0]; i <= hi[0]; ++i) {
      if (!mask.contains({i, j})) return false;
    }
  }
  return true;
}

bool contains(const DomainSpec& spec, const Point& p, bool truncate) {
  switch (spec.kind()) {
    case DomainSpec::Kind::interval:
      return p[0] > 0.0 && p[0] < spec.width();
    case DomainSpec::Kind::rectangle:
      return p[0] > 0.0 && p[0] < spec.width() && p[1] > 0.0 && p[1] < spec.height();
    case DomainSpec::Kind::disk:
      return p[0] * p[0] + p[1] * p[1] < spec.radius() * spec.radius();
    case DomainSpec::Kind::cusp:
      if (!(p[0] > 1.0)) return false;
      if (truncate && !(p[0] < spec.x_max())) return false;
      return p[1] > 0.0 && p[1] < std::pow(p[0], -spec.exponent());
    case DomainSpec::Kind::union_of:
      for (const auto& part : spec.parts()) {
        const Point local{p[0] - part.offset[0], p[1] - part.offset[1]};
        if (contains(part.domain, local, truncate)) return true;
      }
      return false;
    case DomainSpec::Kind::raster:
      return raster_contains(spec.mask(), p);
  }
  return false;
}

void accumulate_report(const DomainSpec& spec, VolumeReport& report) {
  switch (spec.kind()) {
    case DomainSpec::Kind::interval:
      report.value += spec.width();
      break;
    case DomainSpec::Kind::rectangle:
      report.value += spec.width() * spec.height();
      break;
    case DomainSpec::Kind::disk:
      report.value += std::numbers::pi * spec.radius() * spec.radius();
      break;
    case DomainSpec::Kind::cusp: {
      const double p = spec.exponent();
      report.value += 1.0 / (p - 1.0);
      report.truncation_deficit += std::pow(spec.x_max(), 1.0 - p) / (p - 1.0);
      break;
    }
    case DomainSpec::Kind::union_of:
      for (const auto& part : spec.parts()) accumulate_report(part.domain, report);
      break;
    case DomainSpec::Kind::raster: {
      const GridMask& mask = spec.mask();
      const double cell = std::pow(mask.h(), mask.dimension());
      report.value += mask.volume();
      report.uncertainty += static_cast<double>(mask.perimeter_node_count()) * cell;
      break;
    }
  }
}

// One-dimensional squared distance transform (lower envelope of parabolas).
// Entries equal to +inf are sites that never contribute.
void distance_transform_1d(std::span<const double> f, std::span<double> out,
                           std::vector<long>& sites, std::vector<double>& bounds) {
  const long n = static_cast<long>(f.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  sites.assign(static_cast<std::size_t>(n), 0);
  bounds.assign(static_cast<std::size_t>(n + 1), 0.0);
  long k = -1;
  for (long q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s = -kInf;
    while (k >= 0) {
      const long v = sites[k];
      s = ((f[q] + static_cast<double>(q * q)) - (f[v] + static_cast<double>(v * v))) /
          static_cast<double>(2 * (q - v));
      if (s <= bounds[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    sites[k] = q;
    bounds[k] = k == 0 ? -kInf : s;
    bounds[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(out.begin(), out.end(), kInf);
    return;
  }
  long current = 0;
  for (long q = 0; q < n; ++q) {
    while (bounds[current + 1] < static_cast<double>(q)) ++current;
    const long v = sites[current];
    out[q] = static_cast<double>((q - v) * (q - v)) + f[v];
  }
}

}  // namespace

bool membership(const DomainSpec& spec, std::span<const double> point) {
  if (static_cast<int>(point.size()) != spec.dimension()) {
    throw InputError("point has dimension " + std::to_string(point.size()) +
                     " but the domain has dimension " + std::to_string(spec.dimension()));
  }
  Point p{point[0], spec.dimension() == 2 ? point[1] : 0.0};
  return contains(spec, p, false);
}

double volume(const DomainSpec& spec) { return volume_report(spec).value; }

VolumeReport volume_report(const DomainSpec& spec) {
  VolumeReport report;
  accumulate_report(spec, report);
  return report;
}

Box bounding_box(const DomainSpec& spec) {
  switch (spec.kind()) {
    case DomainSpec::Kind::interval:
      return {{0.0, 0.0}, {spec.width(), 0.0}};
    case DomainSpec::Kind::rectangle:
      return {{0.0, 0.0}, {spec.width(), spec.height()}};
    case DomainSpec::Kind::disk:
      return {{-spec.radius(), -spec.radius()}, {spec.radius(), spec.radius()}};
    case DomainSpec::Kind::cusp:
      return {{1.0, 0.0}, {spec.x_max(), 1.0}};
    case DomainSpec::Kind::union_of: {
      constexpr double kInf = std::numeric_limits<double>::infinity();
      Box box{{kInf, kInf}, {-kInf, -kInf}};
      for (const auto& part : spec.parts()) {
        const Box inner = bounding_box(part.domain);
        for (int axis = 0; axis < 2; ++axis) {
          box.lo[axis] = std::min(box.lo[axis], inner.lo[axis] + part.offset[axis]);
          box.hi[axis] = std::max(box.hi[axis], inner.hi[axis] + part.offset[axis]);
        }
      }
      if (spec.dimension() == 1) box.lo[1] = box.hi[1] = 0.0;
      return box;
    }
    case DomainSpec::Kind::raster: {
      const GridMask& mask = spec.mask();
      const double h = mask.h();
      const auto lo = mask.box_min();
      const auto dims = mask.dims();
      Box box;
      box.lo = {h * (static_cast<double>(lo.i) + 0.5), h * (static_cast<double>(lo.j) + 0.5)};
      box.hi = {h * (static_cast<double>(lo.i + dims[0] - 1) - 0.5),
                h * (static_cast<double>(lo.j + dims[1] - 1) - 0.5)};
      if (mask.dimension() == 1) box.lo[1] = box.hi[1] = 0.0;
      return box;
    }
  }
  return {};
}

GridMask rasterize(const DomainSpec& spec, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InputError("rasterization spacing must be positive, got " + std::to_string(h));
  }
  const Box box = bounding_box(spec);
  const int dimension = spec.dimension();
  const long i0 = static_cast<long>(std::floor(box.lo[0] / h));
  const long i1 = static_cast<long>(std::ceil(box.hi[0] / h));
  const long j0 = dimension == 2 ? static_cast<long>(std::floor(box.lo[1] / h)) : 0;
  const long j1 = dimension == 2 ? static_cast<long>(std::ceil(box.hi[1] / h)) : 0;

  std::vector<LatticePoint> nodes;
  for (long j = j0; j <= j1; ++j) {
    for (long i = i0; i <= i1; ++i) {
      const Point p{h * static_cast<double>(i), h * static_cast<double>(j)};
      if (contains(spec, p, true)) nodes.push_back({i, j});
    }
  }
  if (nodes.empty()) {
    throw InputError("rasterization at h=" + std::to_string(h) +
                     " produced an empty mask; reduce h");
  }
  return GridMask(h, dimension, std::move(nodes));
}

std::vector<double> distance_to_complement(const GridMask& mask) {
  if (mask.empty()) throw InputError("distance transform needs a nonempty mask");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto dims = mask.dims();
  const auto lo = mask.box_min();
  const long nx = dims[0];
  const long ny = dims[1];

  std::vector<double> field(static_cast<std::size_t>(nx * ny), 0.0);
  for (const auto& p : mask.nodes()) {
    field[static_cast<std::size_t>((p.j - lo.j) * nx + (p.i - lo.i))] = kInf;
  }

  std::vector<long> sites;
  std::vector<double> bounds;
  std::vector<double> line_in;
  std::vector<double> line_out;

  line_in.resize(static_cast<std::size_t>(nx));
  line_out.resize(static_cast<std::size_t>(nx));
  for (long j = 0; j < ny; ++j) {
    std::copy_n(field.begin() + j * nx, nx, line_in.begin());
    distance_transform_1d(line_in, line_out, sites, bounds);
    std::copy_n(line_out.begin(), nx, field.begin() + j * nx);
  }
  if (mask.dimension() == 2) {
    line_in.resize(static_cast<std::size_t>(ny));
    line_out.resize(static_cast<std::size_t>(ny));
    for (long i = 0; i < nx; ++i) {
      for (long j = 0; j < ny; ++j) line_in[j] = field[j * nx + i];
      distance_transform_1d(line_in, line_out, sites, bounds);
      for (long j = 0; j < ny; ++j) field[j * nx + i] = line_out[j];
    }
  }

  std::vector<double> distance(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const auto& p = mask.node(k);
    distance[k] = mask.h() * std::sqrt(field[(p.j - lo.j) * nx + (p.i - lo.i)]);
  }
  return distance;
}

GridMask inner_domain(const GridMask& mask, double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw InputError("inner domain distance eta must be nonnegative, got " + std::to_string(eta));
  }
  if (mask.empty()) return mask;
  const auto distance = distance_to_complement(mask);
  std::vector<LatticePoint> kept;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (distance[k] > eta) kept.push_back(mask.node(k));
  }
  if (kept.empty()) return GridMask(mask.h(), mask.dimension(), {});
  return GridMask(mask.h(), mask.dimension(), std::move(kept));
}

CubeCover cube_cover(const DomainSpec& spec, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InputError("cube cover needs eta > 0, got " + std::to_string(eta));
  }
  const int dimension = spec.dimension();
  CubeCover cover;
  cover.eta = eta;
  cover.dimension = dimension;
  cover.side = eta / std::sqrt(static_cast<double>(dimension));
  const double side = cover.side;

  const Box box = bounding_box(spec);
  const long i0 = static_cast<long>(std::floor(box.lo[0] / side));
  const long i1 = static_cast<long>(std::ceil(box.hi[0] / side));
  const long j0 = dimension == 2 ? static_cast<long>(std::floor(box.lo[1] / side)) : 0;
  const long j1 = dimension == 2 ? static_cast<long>(std::ceil(box.hi[1] / side)) : 1;

  const double inset = 1e-9 * side;
  std::array<double, kCubeSamplesPerAxis> offsets{};
  for (int s = 0; s < kCubeSamplesPerAxis; ++s) {
    offsets[s] = inset + (side - 2.0 * inset) * static_cast<double>(s) /
                             static_cast<double>(kCubeSamplesPerAxis - 1);
  }
  const int samples_y = dimension == 2 ? kCubeSamplesPerAxis : 1;

  for (long j = j0; j < j1; ++j) {
    for (long i = i0; i < i1; ++i) {
      const Point corner{side * static_cast<double>(i),
                         dimension == 2 ? side * static_cast<double>(j) : 0.0};
      bool inside = true;
      for (int sy = 0; sy < samples_y && inside; ++sy) {
        for (int sx = 0; sx < kCubeSamplesPerAxis && inside; ++sx) {
          const Point p{corner[0] + offsets[sx], dimension == 2 ? corner[1] + offsets[sy] : 0.0};
          inside = contains(spec, p, true);
        }
      }
      if (inside) cover.cubes.push_back({corner});
    }
  }
  cover.covered_volume = static_cast<double>(cover.cubes.size()) * std::pow(side, dimension);
  return cover;
}

}  // namespace weyl
