#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "weyl/grid_mask.hpp"

namespace weyl {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// Identity of the grid an operator was assembled on.
struct GridRef {
  std::uint64_t fingerprint = 0;
  double h = 0.0;
  int dimension = 0;

  friend bool operator==(const GridRef&, const GridRef&) = default;
};

GridRef grid_ref(const GridMask& mask) noexcept;

/// Sparse symmetric matrix realizing a quadratic form on the nodal values of
/// a GridMask. The mass form is h^n·I, so eigenvalues of the matrix are the
/// Rayleigh-quotient critical values directly.
class SymmetricOperator {
 public:
  /// Throws InputError unless `matrix` is square and exactly symmetric.
  SymmetricOperator(SparseMatrix matrix, GridRef grid);

  Eigen::Index rows() const noexcept { return matrix_.rows(); }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  const GridRef& grid() const noexcept { return grid_; }

  double entry(Eigen::Index row, Eigen::Index col) const;
  double quadratic_form(const Eigen::VectorXd& u) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const { return matrix_ * u; }
  /// Max absolute row sum; an upper bound on the spectral norm.
  double norm_bound() const noexcept { return norm_bound_; }

 private:
  SparseMatrix matrix_;
  GridRef grid_;
  double norm_bound_ = 0.0;
};

/// The buckling pencil B u = μ A u.
struct OperatorPencil {
  SymmetricOperator bilaplacian;
  SymmetricOperator laplacian;

  Eigen::Index rows() const noexcept { return laplacian.rows(); }
};

/// Five-point (three-point in 1-D) stencil of -Δ over h² with extension by
/// zero: the principal submatrix of the full-lattice Laplacian on the mask.
SymmetricOperator assemble_dirichlet_laplacian(const GridMask& mask);

/// Zero-extension E and Laplacian factor D of a mask, both mapping interior
/// vectors to values on the closure (interior plus one lattice layer). D is
/// scaled by h^{-2}; A = Eᵀ D and B = Dᵀ D.
struct LaplacianFactor {
  SparseMatrix laplacian_of_extension;  // D
  SparseMatrix zero_extension;          // E
  std::vector<LatticePoint> closure_nodes;
};

LaplacianFactor assemble_laplacian_factor(const GridMask& mask);

/// B = DᵀD, the clamped bilaplacian form Σ|Δ_h u|² over the closure. Bulk rows
/// carry the 13-point stencil (20, -8, 2, 1)/h⁴.
SymmetricOperator assemble_clamped_bilaplacian(const GridMask& mask);

OperatorPencil assemble_buckling_pencil(const GridMask& mask);

/// Coordinate dump: header "%%SymmetricSparse n nnz" followed by one
/// "row col value" line per stored upper-triangle entry (0-based, row <= col).
void write_operator(std::ostream& out, const SymmetricOperator& op);

}  // namespace weyl
