#include "weyl/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

using Triplet = Eigen::Triplet<double, int>;

void require_nonempty(const GridMask& mask) {
  if (mask.empty()) throw InputError("operator assembly needs a nonempty mask");
}

bool exactly_symmetric(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  if (t.nonZeros() != m.nonZeros()) return false;
  for (int col = 0; col < m.outerSize(); ++col) {
    SparseMatrix::InnerIterator a(m, col);
    SparseMatrix::InnerIterator b(t, col);
    for (; a && b; ++a, ++b) {
      if (a.row() != b.row() || a.value() != b.value()) return false;
    }
    if (a || b) return false;
  }
  return true;
}

// Integer 2n+1-point stencil (2n on the diagonal, -1 to interior neighbors).
SparseMatrix integer_laplacian(const GridMask& mask) {
  const int dimension = mask.dimension();
  const auto neighbors = lattice_neighbors(dimension);
  std::vector<Triplet> triplets;
  triplets.reserve(mask.size() * (neighbors.size() + 1));
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const auto& p = mask.node(k);
    const int row = static_cast<int>(k);
    triplets.emplace_back(row, row, 2.0 * dimension);
    for (const auto& d : neighbors) {
      const long other = mask.index_of({p.i + d.i, p.j + d.j});
      if (other >= 0) triplets.emplace_back(row, static_cast<int>(other), -1.0);
    }
  }
  const auto n = static_cast<Eigen::Index>(mask.size());
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

struct IntegerFactor {
  SparseMatrix d;
  SparseMatrix e;
  std::vector<LatticePoint> closure;
};

IntegerFactor integer_factor(const GridMask& mask) {
  const int dimension = mask.dimension();
  const auto neighbors = lattice_neighbors(dimension);

  std::vector<LatticePoint> closure(mask.nodes().begin(), mask.nodes().end());
  for (const auto& p : mask.nodes()) {
    for (const auto& d : neighbors) closure.push_back({p.i + d.i, p.j + d.j});
  }
  // Same (j, i) order as GridMask so the closure enumeration is deterministic.
  std::sort(closure.begin(), closure.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.j != b.j ? a.j < b.j : a.i < b.i;
  });
  closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
  auto closure_index = [&](LatticePoint p) {
    const auto it = std::lower_bound(closure.begin(), closure.end(), p,
                                     [](const LatticePoint& a, const LatticePoint& b) {
                                       return a.j != b.j ? a.j < b.j : a.i < b.i;
                                     });
    return static_cast<int>(it - closure.begin());
  };

  std::vector<Triplet> d_entries;
  std::vector<Triplet> e_entries;
  d_entries.reserve(mask.size() * (neighbors.size() + 1));
  e_entries.reserve(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const auto& p = mask.node(k);
    const int col = static_cast<int>(k);
    const int self = closure_index(p);
    d_entries.emplace_back(self, col, 2.0 * dimension);
    e_entries.emplace_back(self, col, 1.0);
    for (const auto& d : neighbors) {
      d_entries.emplace_back(closure_index({p.i + d.i, p.j + d.j}), col, -1.0);
    }
  }
  const auto rows = static_cast<Eigen::Index>(closure.size());
  const auto cols = static_cast<Eigen::Index>(mask.size());
  IntegerFactor factor{SparseMatrix(rows, cols), SparseMatrix(rows, cols), std::move(closure)};
  factor.d.setFromTriplets(d_entries.begin(), d_entries.end());
  factor.e.setFromTriplets(e_entries.begin(), e_entries.end());
  return factor;
}

}  // namespace

GridRef grid_ref(const GridMask& mask) noexcept {
  return {mask.fingerprint(), mask.h(), mask.dimension()};
}

SymmetricOperator::SymmetricOperator(SparseMatrix matrix, GridRef grid)
    : matrix_(std::move(matrix)), grid_(grid) {
  if (matrix_.rows() != matrix_.cols()) throw InputError("operator matrix must be square");
  matrix_.makeCompressed();
  if (!exactly_symmetric(matrix_)) throw InputError("operator matrix is not exactly symmetric");
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(matrix_.rows());
  for (int col = 0; col < matrix_.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(matrix_, col); it; ++it) {
      row_sums[it.row()] += std::abs(it.value());
    }
  }
  norm_bound_ = row_sums.size() > 0 ? row_sums.maxCoeff() : 0.0;
}

double SymmetricOperator::entry(Eigen::Index row, Eigen::Index col) const {
  return matrix_.coeff(row, col);
}

double SymmetricOperator::quadratic_form(const Eigen::VectorXd& u) const {
  return u.dot(matrix_ * u);
}

SymmetricOperator assemble_dirichlet_laplacian(const GridMask& mask) {
  require_nonempty(mask);
  const double scale = 1.0 / (mask.h() * mask.h());
  SparseMatrix a = integer_laplacian(mask) * scale;
  return SymmetricOperator(std::move(a), grid_ref(mask));
}

LaplacianFactor assemble_laplacian_factor(const GridMask& mask) {
  require_nonempty(mask);
  IntegerFactor factor = integer_factor(mask);
  const double scale = 1.0 / (mask.h() * mask.h());
  return {factor.d * scale, std::move(factor.e), std::move(factor.closure)};
}

SymmetricOperator assemble_clamped_bilaplacian(const GridMask& mask) {
  require_nonempty(mask);
  const IntegerFactor factor = integer_factor(mask);
  // Integer entries: the product is exact, so symmetry survives the scaling.
  SparseMatrix b = SparseMatrix(factor.d.transpose()) * factor.d;
  b.prune(0.0);
  const double h2 = mask.h() * mask.h();
  b *= 1.0 / (h2 * h2);
  return SymmetricOperator(std::move(b), grid_ref(mask));
}

OperatorPencil assemble_buckling_pencil(const GridMask& mask) {
  return {assemble_clamped_bilaplacian(mask), assemble_dirichlet_laplacian(mask)};
}

void write_operator(std::ostream& out, const SymmetricOperator& op) {
  const SparseMatrix& m = op.matrix();
  long upper = 0;
  for (int col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      if (it.row() <= col) ++upper;
    }
  }
  const auto old_precision = out.precision(17);
  out << "%%SymmetricSparse " << m.rows() << ' ' << upper << '\n';
  // Row-major traversal of the upper triangle: column `col` of the
  // symmetric matrix is row `col` of its transpose.
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      if (it.row() >= row) out << row << ' ' << it.row() << ' ' << it.value() << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace weyl
