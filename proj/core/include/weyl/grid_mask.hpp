#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace weyl {

/// Integer coordinates on the global lattice h·ℤ^n. For one-dimensional masks
/// `j` is always zero.
struct LatticePoint {
  long i = 0;
  long j = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Rasterization of an open set at spacing h.
///
/// Nodes live on the global lattice anchored at the coordinate origin, so masks
/// built at the same h from different domains share node positions and can be
/// compared node by node. Interior nodes are enumerated densely in (j, i)
/// lexicographic order; that enumeration is the row/column index of every
/// operator assembled on the mask. The stored box always carries one ring of
/// exterior nodes around the interior.
class GridMask {
 public:
  GridMask() = default;
  GridMask(double h, int dimension, std::vector<LatticePoint> nodes);

  double h() const noexcept { return h_; }
  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  std::span<const LatticePoint> nodes() const noexcept { return nodes_; }
  const LatticePoint& node(std::size_t index) const { return nodes_[index]; }

  /// Lower corner of the padded box (an exterior node).
  LatticePoint box_min() const noexcept { return box_min_; }
  /// Node counts of the padded box along each axis.
  std::array<long, 2> dims() const noexcept { return dims_; }
  /// Physical coordinate of box_min().
  std::array<double, 2> origin() const noexcept;

  bool contains(LatticePoint p) const noexcept { return index_of(p) >= 0; }
  /// Dense index of an interior node, or -1.
  long index_of(LatticePoint p) const noexcept;
  std::array<double, 2> position(LatticePoint p) const noexcept;

  /// N·h^n.
  double volume() const noexcept;
  /// Interior nodes with at least one non-interior lattice neighbor.
  std::size_t perimeter_node_count() const noexcept;

  /// Stable hash of (h, dimension, node set); identifies the grid an operator
  /// was assembled on.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  bool is_subset_of(const GridMask& other) const noexcept;

 private:
  double h_ = 0.0;
  int dimension_ = 2;
  std::vector<LatticePoint> nodes_;
  LatticePoint box_min_{};
  std::array<long, 2> dims_{0, 0};
  std::vector<std::int32_t> index_;
  std::uint64_t fingerprint_ = 0;
};

/// Axis neighbor offsets of the 2n+1-point Laplacian stencil (excluding the center).
std::span<const LatticePoint> lattice_neighbors(int dimension) noexcept;

}  // namespace weyl
