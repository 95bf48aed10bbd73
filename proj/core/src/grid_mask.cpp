#include "weyl/grid_mask.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

constexpr std::array<LatticePoint, 4> kNeighbors2d{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<LatticePoint, 2> kNeighbors1d{{{1, 0}, {-1, 0}}};

std::uint64_t fnv_mix(std::uint64_t state, std::uint64_t value) {
  constexpr std::uint64_t kPrime = 1099511628211ULL;
  for (int byte = 0; byte < 8; ++byte) {
    state ^= (value >> (8 * byte)) & 0xffU;
    state *= kPrime;
  }
  return state;
}

}  // namespace

std::span<const LatticePoint> lattice_neighbors(int dimension) noexcept {
  if (dimension == 1) return kNeighbors1d;
  return kNeighbors2d;
}

GridMask::GridMask(double h, int dimension, std::vector<LatticePoint> nodes)
    : h_(h), dimension_(dimension), nodes_(std::move(nodes)) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InputError("grid spacing must be positive and finite, got " + std::to_string(h));
  }
  if (dimension != 1 && dimension != 2) {
    throw InputError("grid masks support dimension 1 or 2, got " + std::to_string(dimension));
  }
  if (dimension == 1) {
    for (const auto& p : nodes_) {
      if (p.j != 0) throw InputError("one-dimensional mask node with nonzero j index");
    }
  }
  std::sort(nodes_.begin(), nodes_.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.j != b.j ? a.j < b.j : a.i < b.i;
  });
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw InputError("mask too large for 32-bit node indexing");
  }

  std::uint64_t state = 14695981039346656037ULL;
  state = fnv_mix(state, std::bit_cast<std::uint64_t>(h_));
  state = fnv_mix(state, static_cast<std::uint64_t>(dimension_));
  for (const auto& p : nodes_) {
    state = fnv_mix(state, static_cast<std::uint64_t>(p.i));
    state = fnv_mix(state, static_cast<std::uint64_t>(p.j));
  }
  fingerprint_ = state;

  if (nodes_.empty()) return;

  long imin = nodes_.front().i, imax = imin;
  long jmin = nodes_.front().j, jmax = nodes_.back().j;
  for (const auto& p : nodes_) {
    imin = std::min(imin, p.i);
    imax = std::max(imax, p.i);
  }
  const long pad_j = dimension_ == 2 ? 1 : 0;
  box_min_ = {imin - 1, jmin - pad_j};
  dims_ = {imax - imin + 3, jmax - jmin + 1 + 2 * pad_j};
  index_.assign(static_cast<std::size_t>(dims_[0] * dims_[1]), -1);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const auto& p = nodes_[k];
    const long flat = (p.j - box_min_.j) * dims_[0] + (p.i - box_min_.i);
    index_[static_cast<std::size_t>(flat)] = static_cast<std::int32_t>(k);
  }
}

std::array<double, 2> GridMask::origin() const noexcept {
  return {h_ * static_cast<double>(box_min_.i), h_ * static_cast<double>(box_min_.j)};
}

long GridMask::index_of(LatticePoint p) const noexcept {
  if (nodes_.empty()) return -1;
  const long li = p.i - box_min_.i;
  const long lj = p.j - box_min_.j;
  if (li < 0 || lj < 0 || li >= dims_[0] || lj >= dims_[1]) return -1;
  return index_[static_cast<std::size_t>(lj * dims_[0] + li)];
}

std::array<double, 2> GridMask::position(LatticePoint p) const noexcept {
  return {h_ * static_cast<double>(p.i), h_ * static_cast<double>(p.j)};
}

double GridMask::volume() const noexcept {
  return static_cast<double>(nodes_.size()) * std::pow(h_, dimension_);
}

std::size_t GridMask::perimeter_node_count() const noexcept {
  std::size_t count = 0;
  for (const auto& p : nodes_) {
    for (const auto& d : lattice_neighbors(dimension_)) {
      if (!contains({p.i + d.i, p.j + d.j})) {
        ++count;
        break;
      }
    }
  }
  return count;
}

bool GridMask::is_subset_of(const GridMask& other) const noexcept {
  if (h_ != other.h_ || dimension_ != other.dimension_) return empty();
  return std::all_of(nodes_.begin(), nodes_.end(),
                     [&](const LatticePoint& p) { return other.contains(p); });
}

}  // namespace weyl
