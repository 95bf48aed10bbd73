#include "weyl/proof_checks.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "weyl/discretization.hpp"
#include "weyl/errors.hpp"
#include "weyl/oracles.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

namespace {

std::string chain_summary(const ChainReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "inequality chain N_b <= N_bl <= N_D violated:";
  for (const auto& row : report.rows) {
    if (!row.pass) {
      os << " [lambda=" << row.lambda << " N_b=" << row.buckling << " N_bl=" << row.bilaplacian
         << " N_D=" << row.dirichlet << "]";
    }
  }
  return os.str();
}

std::string super_summary(const SuperadditivityReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "superadditivity violated:";
  for (const auto& row : report.rows) {
    if (row.pass) continue;
    long sum = 0;
    for (long c : row.parts) sum += c;
    os << " [" << to_string(row.problem) << " lambda=" << row.lambda << " whole=" << row.whole
       << " parts=" << sum << "]";
  }
  return os.str();
}

struct ProblemOperators {
  SymmetricOperator laplacian;
  SymmetricOperator bilaplacian;
  OperatorPencil pencil;
};

ProblemOperators assemble_all(const GridMask& mask) {
  auto laplacian = assemble_dirichlet_laplacian(mask);
  auto bilaplacian = assemble_clamped_bilaplacian(mask);
  OperatorPencil pencil{bilaplacian, laplacian};
  return {std::move(laplacian), std::move(bilaplacian), std::move(pencil)};
}

long count_problem(const ProblemOperators& ops, Problem problem, double lambda,
                   const SolverOptions& options) {
  switch (problem) {
    case Problem::dirichlet:
      return inertia_count_with_retry(ops.laplacian, lambda, options);
    case Problem::bilaplacian_root:
      return inertia_count_with_retry(ops.bilaplacian, lambda * lambda, options);
    case Problem::buckling:
      return inertia_count_with_retry(ops.pencil, lambda, options);
  }
  return 0;
}

constexpr std::array<Problem, 3> kProblems{Problem::dirichlet, Problem::bilaplacian_root,
                                           Problem::buckling};

}  // namespace

bool ChainReport::passed() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const ChainRow& r) { return r.pass; });
}

void ChainReport::write(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  for (const auto& row : rows) {
    out << (row.pass ? "PASS" : "FAIL") << " lambda=" << row.lambda << " N_b=" << row.buckling
        << " N_bl=" << row.bilaplacian << " N_D=" << row.dirichlet << '\n';
  }
  out << "chain " << (passed() ? "PASS" : "FAIL") << " rows=" << rows.size() << '\n';
  out.precision(old_precision);
}

ChainViolation::ChainViolation(ChainReport report)
    : InvariantViolation(chain_summary(report)), report_(std::move(report)) {}

ChainReport verify_chain(const GridMask& mask, std::span<const double> lambdas,
                         const SolverOptions& options) {
  const ProblemOperators ops = assemble_all(mask);
  ChainReport report;
  report.rows.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t k) {
    const double lambda = lambdas[k];
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw InputError("chain lambdas must be positive and finite");
    }
    ChainRow& row = report.rows[k];
    row.lambda = lambda;
    row.dirichlet = count_problem(ops, Problem::dirichlet, lambda, options);
    row.bilaplacian = count_problem(ops, Problem::bilaplacian_root, lambda, options);
    row.buckling = count_problem(ops, Problem::buckling, lambda, options);
    row.pass = row.buckling <= row.bilaplacian && row.bilaplacian <= row.dirichlet;
  });
  if (!report.passed()) throw ChainViolation(std::move(report));
  return report;
}

std::vector<double> eigenvalue_avoiding_grid(std::span<const Spectrum> spectra, std::size_t count,
                                             double upper) {
  std::vector<double> merged;
  double limit = upper;
  for (const auto& spectrum : spectra) {
    merged.insert(merged.end(), spectrum.values().begin(), spectrum.values().end());
    limit = std::min(limit, spectrum.cutoff());
  }
  std::sort(merged.begin(), merged.end());
  // Clusters [lo, hi] of values within 1e-9 relative of their neighbor.
  std::vector<std::pair<double, double>> clusters;
  for (const double v : merged) {
    if (clusters.empty() || v - clusters.back().second > 1e-9 * std::abs(v)) {
      clusters.emplace_back(v, v);
    } else {
      clusters.back().second = v;
    }
  }
  std::vector<double> candidates;
  if (!clusters.empty()) candidates.push_back(0.5 * clusters.front().first);
  for (std::size_t k = 0; k + 1 < clusters.size(); ++k) {
    candidates.push_back(0.5 * (clusters[k].second + clusters[k + 1].first));
  }
  std::erase_if(candidates, [&](double x) { return x > limit; });
  std::vector<double> grid;
  if (candidates.empty() || count == 0) return grid;
  if (count >= candidates.size()) return candidates;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t at = count == 1 ? candidates.size() - 1
                                      : k * (candidates.size() - 1) / (count - 1);
    grid.push_back(candidates[at]);
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

bool SuperadditivityReport::passed() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const SuperadditivityRow& r) { return r.pass; });
}

void SuperadditivityReport::write(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  for (const auto& row : rows) {
    long sum = 0;
    out << (row.pass ? "PASS" : "FAIL") << " problem=" << to_string(row.problem)
        << " lambda=" << row.lambda << " whole=" << row.whole << " parts=";
    for (std::size_t k = 0; k < row.parts.size(); ++k) {
      out << (k ? "+" : "") << row.parts[k];
      sum += row.parts[k];
    }
    out << " sum=" << sum << '\n';
  }
  out << "superadditivity " << (passed() ? "PASS" : "FAIL") << " rows=" << rows.size() << '\n';
  out.precision(old_precision);
}

SuperadditivityViolation::SuperadditivityViolation(SuperadditivityReport report)
    : InvariantViolation(super_summary(report)), report_(std::move(report)) {}

void require_separated_parts(const GridMask& whole, std::span<const GridMask> parts) {
  for (std::size_t a = 0; a < parts.size(); ++a) {
    if (parts[a].empty()) throw InputError("superadditivity part " + std::to_string(a) + " is empty");
    if (!parts[a].is_subset_of(whole)) {
      throw InputError("superadditivity part " + std::to_string(a) + " is not a subset of the whole mask");
    }
  }
  const int dimension = whole.dimension();
  const long reach_j = dimension == 2 ? 2 : 0;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (const auto& p : parts[a].nodes()) {
      for (long dj = -reach_j; dj <= reach_j; ++dj) {
        for (long di = -2; di <= 2; ++di) {
          if (std::abs(di) + std::abs(dj) > 2) continue;
          const LatticePoint q{p.i + di, p.j + dj};
          for (std::size_t b = 0; b < parts.size(); ++b) {
            if (b != a && parts[b].contains(q)) {
              throw InputError("superadditivity parts " + std::to_string(a) + " and " +
                               std::to_string(b) +
                               " are not separated (closed stencil neighborhoods meet)");
            }
          }
        }
      }
    }
  }
}

SuperadditivityReport superadditivity_check(const GridMask& whole, std::span<const GridMask> parts,
                                            std::span<const double> lambdas,
                                            const SolverOptions& options) {
  require_separated_parts(whole, parts);
  const ProblemOperators whole_ops = assemble_all(whole);
  std::vector<ProblemOperators> part_ops;
  part_ops.reserve(parts.size());
  for (const auto& part : parts) part_ops.push_back(assemble_all(part));

  SuperadditivityReport report;
  report.rows.resize(lambdas.size() * kProblems.size());
  parallel_for(report.rows.size(), [&](std::size_t k) {
    const double lambda = lambdas[k / kProblems.size()];
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw InputError("superadditivity lambdas must be positive and finite");
    }
    const Problem problem = kProblems[k % kProblems.size()];
    SuperadditivityRow& row = report.rows[k];
    row.problem = problem;
    row.lambda = lambda;
    row.whole = count_problem(whole_ops, problem, lambda, options);
    long sum = 0;
    for (const auto& ops : part_ops) {
      row.parts.push_back(count_problem(ops, problem, lambda, options));
      sum += row.parts.back();
    }
    row.pass = row.whole >= sum;
  });
  if (!report.passed()) throw SuperadditivityViolation(std::move(report));
  return report;
}

std::array<GridMask, 2> split_separated(const GridMask& mask, double angle) {
  if (mask.empty()) throw InputError("cannot split an empty mask");
  double ci = 0.0, cj = 0.0;
  for (const auto& p : mask.nodes()) {
    ci += static_cast<double>(p.i);
    cj += static_cast<double>(p.j);
  }
  ci /= static_cast<double>(mask.size());
  cj /= static_cast<double>(mask.size());
  const double nx = std::cos(angle);
  const double ny = mask.dimension() == 2 ? std::sin(angle) : 0.0;
  // |Δs| ≤ L1·(|nx| + |ny|), so |s| > |nx| + |ny| on both sides forces L1 ≥ 3.
  const double band = std::abs(nx) + std::abs(ny);
  std::vector<LatticePoint> left, right;
  for (const auto& p : mask.nodes()) {
    const double s = (static_cast<double>(p.i) - ci) * nx + (static_cast<double>(p.j) - cj) * ny;
    if (s < -band) {
      left.push_back(p);
    } else if (s > band) {
      right.push_back(p);
    }
  }
  return {GridMask(mask.h(), mask.dimension(), std::move(left)),
          GridMask(mask.h(), mask.dimension(), std::move(right))};
}

long cube_lower_bound(const CubeCover& cover, double lambda) {
  if (cover.empty()) throw InputError("cube_lower_bound needs a nonempty cover");
  const long per_cube = cover.dimension == 1 ? interval_count(cover.side, lambda)
                                             : rectangle_count(cover.side, cover.side, lambda);
  return per_cube * static_cast<long>(cover.cubes.size());
}

}  // namespace weyl
