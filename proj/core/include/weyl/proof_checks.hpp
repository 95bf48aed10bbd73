#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "weyl/eigensolve.hpp"
#include "weyl/geometry.hpp"
#include "weyl/grid_mask.hpp"
#include "weyl/spectrum.hpp"

namespace weyl {

/// Counts of the three problems at one λ on one mask.
struct ChainRow {
  double lambda = 0.0;
  long buckling = 0;     // N_b(λ): pencil eigenvalues μ < λ
  long bilaplacian = 0;  // N_bl(λ): ω < λ, i.e. eigenvalues of B below λ²
  long dirichlet = 0;    // N_D(λ)
  bool pass = true;      // N_b ≤ N_bl ≤ N_D
};

struct ChainReport {
  std::vector<ChainRow> rows;

  bool passed() const noexcept;
  /// One "PASS|FAIL lambda=... N_b=... N_bl=... N_D=..." record per row.
  void write(std::ostream& out) const;
};

class ChainViolation : public InvariantViolation {
 public:
  explicit ChainViolation(ChainReport report);
  const ChainReport& report() const noexcept { return report_; }

 private:
  ChainReport report_;
};

/// Exact integer check of N_b(λ) ≤ N_bl(λ) ≤ N_D(λ) on a mask, every count from
/// matrix inertia. Throws ChainViolation (carrying the full report) if any λ
/// fails.
ChainReport verify_chain(const GridMask& mask, std::span<const double> lambdas,
                         const SolverOptions& options = {});

/// `count` λ values strictly between consecutive distinct values of the
/// merged spectra (values within 1e-9 relative are merged first), spread
/// evenly over the available gaps and kept at or below `upper`.
std::vector<double> eigenvalue_avoiding_grid(std::span<const Spectrum> spectra, std::size_t count,
                                             double upper = Spectrum::kComplete);

struct SuperadditivityRow {
  Problem problem = Problem::dirichlet;
  double lambda = 0.0;
  long whole = 0;
  std::vector<long> parts;
  bool pass = true;  // whole ≥ Σ parts
};

struct SuperadditivityReport {
  std::vector<SuperadditivityRow> rows;

  bool passed() const noexcept;
  void write(std::ostream& out) const;
};

class SuperadditivityViolation : public InvariantViolation {
 public:
  explicit SuperadditivityViolation(SuperadditivityReport report);
  const SuperadditivityReport& report() const noexcept { return report_; }

 private:
  SuperadditivityReport report_;
};

/// Parts must be subsets of `whole` whose closed stencil neighborhoods are
/// pairwise disjoint (lattice L1 distance ≥ 3 between any two parts): the
/// discrete counterpart of disjoint open sets for both the H¹₀ and H²₀ forms.
/// Throws InputError otherwise.
void require_separated_parts(const GridMask& whole, std::span<const GridMask> parts);

/// N(λ, whole) ≥ Σ N(λ, part) for all three problems, exact inertia counts.
/// Throws SuperadditivityViolation on failure.
SuperadditivityReport superadditivity_check(const GridMask& whole, std::span<const GridMask> parts,
                                            std::span<const double> lambdas,
                                            const SolverOptions& options = {});

/// Splits a mask into two separated parts by the line through its node
/// centroid at `angle` (radians), dropping the nodes within the separation
/// band. Either part may come out empty for very thin masks.
std::array<GridMask, 2> split_separated(const GridMask& mask, double angle);

/// Σ over cubes of the analytic Dirichlet count of one cube below λ. A
/// lower bound for N_D(λ, Ω) by superadditivity.
long cube_lower_bound(const CubeCover& cover, double lambda);

}  // namespace weyl
