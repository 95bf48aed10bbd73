#include "weylcheck/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <weyl/weyl.hpp>

namespace weylcheck {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::string& text, const char* flag) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value)) {
    throw weyl::InputError(std::string(flag) + ": '" + text + "' is not a number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  for (const auto& item : split(text, ',')) values.push_back(parse_number(item, flag));
  if (values.empty()) throw weyl::InputError(std::string(flag) + ": empty list");
  for (double v : values) {
    if (!(v > 0.0)) throw weyl::InputError(std::string(flag) + ": values must be positive");
  }
  return values;
}

/// K from "auto:K", or nullopt for an explicit list.
std::optional<std::size_t> auto_count(const std::string& text) {
  if (text.rfind("auto:", 0) != 0) return std::nullopt;
  const double k = parse_number(text.substr(5), "--lambdas");
  if (k < 1 || k != std::floor(k)) throw weyl::InputError("--lambdas: auto:K needs a positive integer K");
  return static_cast<std::size_t>(k);
}

std::vector<double> parse_times(const std::string& text) {
  if (text.rfind("log:", 0) == 0) {
    const auto parts = split(text.substr(4), ':');
    if (parts.size() != 3) throw weyl::InputError("--times: expected log:LO:HI:K");
    const double lo = parse_number(parts[0], "--times");
    const double hi = parse_number(parts[1], "--times");
    const double k = parse_number(parts[2], "--times");
    if (!(lo > 0.0) || !(hi > lo) || k < 2 || k != std::floor(k)) {
      throw weyl::InputError("--times: need 0 < LO < HI and an integer K >= 2");
    }
    return weyl::log_spaced(lo, hi, static_cast<std::size_t>(k));
  }
  return parse_list(text, "--times");
}

/// Every artifact starts with the command and the config echo.
class Artifacts {
 public:
  explicit Artifacts(const RunConfig& config) : config_(config), echo_(to_json(config)) {}

  std::ofstream open(const std::string& name) const {
    std::ofstream out(config_.output_dir / name, std::ios::binary);
    if (!out) throw weyl::InputError("cannot write " + (config_.output_dir / name).string());
    return out;
  }

  std::ofstream csv(const std::string& name, const std::string& header) const {
    auto out = open(name);
    out << "# weylcheck " << to_string(config_.command) << "\n# config: " << echo_.dump() << "\n"
        << header << "\n";
    return out;
  }

  void json(const std::string& name, Json body) const {
    Json doc;
    doc["config"] = echo_;
    for (auto& [key, value] : body.items()) doc[key] = value;
    open(name) << doc.dump(2) << "\n";
  }

  void text(const std::string& name, const std::function<void(std::ostream&)>& fill) const {
    auto out = open(name);
    out << "# weylcheck " << to_string(config_.command) << "\n# config: " << echo_.dump() << "\n";
    fill(out);
  }

 private:
  const RunConfig& config_;
  Json echo_;
};

weyl::DomainSpec domain_of(const RunConfig& c) {
  if (c.domain_path) return weyl::load_domain(*c.domain_path);
  if (c.rectangle) return weyl::DomainSpec::rectangle((*c.rectangle)[0], (*c.rectangle)[1]);
  if (c.interval) return weyl::DomainSpec::interval(*c.interval);
  return weyl::DomainSpec::disk(*c.disk);
}

bool has_grid(const RunConfig& c, const weyl::DomainSpec& spec) {
  return c.h.has_value() || spec.kind() == weyl::DomainSpec::Kind::raster;
}

weyl::GridMask mask_of(const RunConfig& c, const weyl::DomainSpec& spec) {
  if (c.h) return weyl::rasterize(spec, *c.h);
  if (spec.kind() == weyl::DomainSpec::Kind::raster) return spec.mask();
  throw weyl::InputError("--h is required for grid computations on this domain");
}

/// Closed-form spectrum below Λ for the analytic kinds.
weyl::Spectrum analytic_spectrum(const weyl::DomainSpec& spec, double cutoff) {
  switch (spec.kind()) {
    case weyl::DomainSpec::Kind::interval:
      return weyl::interval_spectrum(spec.width(), cutoff);
    case weyl::DomainSpec::Kind::rectangle:
      return weyl::rectangle_spectrum(spec.width(), spec.height(), cutoff);
    case weyl::DomainSpec::Kind::disk:
      return weyl::disk_spectrum(spec.radius(), cutoff);
    default:
      throw weyl::InputError(std::string("no closed-form spectrum for a ") + weyl::to_string(spec.kind()) +
                             " domain; pass --h for a grid spectrum");
  }
}

weyl::Spectrum grid_spectrum(const weyl::GridMask& mask, weyl::Problem problem, long k,
                             const weyl::SolverOptions& options) {
  const auto n = static_cast<long>(mask.size());
  const bool all = k >= n;
  if (problem == weyl::Problem::buckling) {
    return weyl::generalized_spectrum(weyl::assemble_buckling_pencil(mask), all ? n : k, options);
  }
  const auto op = problem == weyl::Problem::dirichlet ? weyl::assemble_dirichlet_laplacian(mask)
                                                      : weyl::assemble_clamped_bilaplacian(mask);
  if (all) return weyl::dense_spectrum(op, problem, options);
  return weyl::lowest_k(op, k, options.tol, problem, options);
}

std::vector<weyl::Spectrum> full_spectra(const weyl::GridMask& mask,
                                         std::span<const weyl::Problem> problems,
                                         const weyl::SolverOptions& options) {
  if (static_cast<long>(mask.size()) > options.dense_limit) {
    throw weyl::InputError("--lambdas auto:K needs full spectra; the mask has " +
                           std::to_string(mask.size()) + " nodes, above --dense-limit");
  }
  std::vector<weyl::Spectrum> spectra;
  for (const auto problem : problems) {
    spectra.push_back(grid_spectrum(mask, problem, static_cast<long>(mask.size()), options));
  }
  return spectra;
}

constexpr std::array<weyl::Problem, 3> kAllProblems{
    weyl::Problem::dirichlet, weyl::Problem::bilaplacian_root, weyl::Problem::buckling};

std::vector<double> lambdas_for(const RunConfig& c, const std::vector<weyl::GridMask>& masks,
                                std::span<const weyl::Problem> problems,
                                const weyl::SolverOptions& options) {
  const auto k = auto_count(c.lambdas);
  if (!k) return parse_list(c.lambdas, "--lambdas");
  std::vector<weyl::Spectrum> spectra;
  for (const auto& mask : masks) {
    for (auto& s : full_spectra(mask, problems, options)) spectra.push_back(std::move(s));
  }
  auto grid = weyl::eigenvalue_avoiding_grid(spectra, *k);
  if (grid.empty()) throw weyl::InputError("--lambdas: the spectra leave no gap to sample");
  return grid;
}

double ratio(long count, double weyl_term) { return weyl_term > 0.0 ? count / weyl_term : 0.0; }

Json grid_json(const weyl::GridMask& mask) {
  return Json{{"h", mask.h()}, {"dimension", mask.dimension()}, {"nodes", mask.size()},
              {"fingerprint", mask.fingerprint()}};
}

int cmd_solve(const RunConfig& c, const Artifacts& out) {
  const auto spec = domain_of(c);
  const auto mask = mask_of(c, spec);
  const auto options = solver_options(c);
  const auto spectrum = grid_spectrum(mask, c.problem, c.k, options);
  const double h2 = mask.h() * mask.h();

  auto csv = out.csv("spectrum.csv", "index,value,value_h2,trusted");
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double v = spectrum.values()[j];
    csv << j + 1 << "," << number(v) << "," << number(v * h2) << ","
        << (weyl::within_trust_region(spectrum, v) ? 1 : 0) << "\n";
  }
  if (c.dump_operator) {
    if (c.problem == weyl::Problem::buckling) {
      const auto pencil = weyl::assemble_buckling_pencil(mask);
      auto b = out.open("operator_bilaplacian.txt");
      weyl::write_operator(b, pencil.bilaplacian);
      auto a = out.open("operator_laplacian.txt");
      weyl::write_operator(a, pencil.laplacian);
    } else {
      const auto op = c.problem == weyl::Problem::dirichlet ? weyl::assemble_dirichlet_laplacian(mask)
                                                            : weyl::assemble_clamped_bilaplacian(mask);
      auto file = out.open("operator.txt");
      weyl::write_operator(file, op);
    }
  }
  out.json("summary.json", Json{{"grid", grid_json(mask)},
                                {"volume", weyl::volume(spec)},
                                {"eigenvalues", spectrum.size()},
                                {"cutoff", number(spectrum.cutoff())},
                                {"trust_dispersion", weyl::kTrustDispersion}});
  return kExitOk;
}

long count_at(const weyl::GridMask& mask, weyl::Problem problem, double lambda,
              const weyl::SolverOptions& options) {
  switch (problem) {
    case weyl::Problem::dirichlet:
      return weyl::inertia_count_with_retry(weyl::assemble_dirichlet_laplacian(mask), lambda, options);
    case weyl::Problem::bilaplacian_root:
      return weyl::inertia_count_with_retry(weyl::assemble_clamped_bilaplacian(mask), lambda * lambda,
                                            options);
    case weyl::Problem::buckling:
      return weyl::inertia_count_with_retry(weyl::assemble_buckling_pencil(mask), lambda, options);
  }
  return 0;
}

int cmd_count(const RunConfig& c, const Artifacts& out) {
  const auto spec = domain_of(c);
  const auto options = solver_options(c);
  const auto n = spec.dimension();
  const double volume = weyl::volume(spec);
  const std::array<weyl::Problem, 1> problem{c.problem};

  std::vector<double> lambdas;
  std::vector<long> counts;
  std::optional<weyl::GridMask> mask;
  if (has_grid(c, spec)) {
    mask = mask_of(c, spec);
    lambdas = lambdas_for(c, {*mask}, problem, options);
    counts.resize(lambdas.size());
    weyl::parallel_for(lambdas.size(), [&](std::size_t i) {
      counts[i] = count_at(*mask, c.problem, lambdas[i], options);
    });
  } else {
    if (c.problem != weyl::Problem::dirichlet) {
      throw weyl::InputError("--problem: closed-form counts exist only for the Dirichlet problem");
    }
    if (auto_count(c.lambdas)) throw weyl::InputError("--lambdas: auto:K needs a grid (--h)");
    lambdas = parse_list(c.lambdas, "--lambdas");
    for (double lambda : lambdas) {
      if (spec.kind() == weyl::DomainSpec::Kind::rectangle) {
        counts.push_back(weyl::rectangle_count(spec.width(), spec.height(), lambda));
      } else if (spec.kind() == weyl::DomainSpec::Kind::interval) {
        counts.push_back(weyl::interval_count(spec.width(), lambda));
      } else {
        counts.push_back(weyl::counting(analytic_spectrum(spec, lambda), lambda));
      }
    }
  }

  auto csv = out.csv("counts.csv", "lambda,count,weyl_ratio,lambda_h2,trusted");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double weyl_term = weyl::weyl_constant(n, volume) * std::pow(lambdas[i], 0.5 * n);
    const double lh2 = mask ? lambdas[i] * mask->h() * mask->h() : 0.0;
    csv << number(lambdas[i]) << "," << counts[i] << "," << number(ratio(counts[i], weyl_term)) << ","
        << number(lh2) << "," << (lh2 <= weyl::kTrustDispersion ? 1 : 0) << "\n";
  }
  out.json("summary.json", Json{{"grid", mask ? grid_json(*mask) : Json(nullptr)},
                                {"volume", volume},
                                {"weyl_constant", weyl::weyl_constant(n, volume)},
                                {"points", lambdas.size()}});
  return kExitOk;
}

int cmd_chain(const RunConfig& c, const Artifacts& out) {
  const auto spec = domain_of(c);
  const auto mask = mask_of(c, spec);
  const auto options = solver_options(c);
  const auto lambdas = lambdas_for(c, {mask}, kAllProblems, options);

  weyl::ChainReport report;
  int status = kExitOk;
  try {
    report = weyl::verify_chain(mask, lambdas, options);
  } catch (const weyl::ChainViolation& e) {
    report = e.report();
    status = kExitInvariant;
  }

  const int n = spec.dimension();
  const double constant = weyl::weyl_constant(n, weyl::volume(spec));
  auto csv = out.csv("chain.csv",
                     "lambda,N_b,N_bl,N_D,pass,ratio_b,ratio_bl,ratio_D,lambda_h2,trusted");
  for (const auto& row : report.rows) {
    const double weyl_term = constant * std::pow(row.lambda, 0.5 * n);
    const double lh2 = row.lambda * mask.h() * mask.h();
    csv << number(row.lambda) << "," << row.buckling << "," << row.bilaplacian << "," << row.dirichlet
        << "," << (row.pass ? 1 : 0) << "," << number(ratio(row.buckling, weyl_term)) << ","
        << number(ratio(row.bilaplacian, weyl_term)) << "," << number(ratio(row.dirichlet, weyl_term))
        << "," << number(lh2) << "," << (lh2 <= weyl::kTrustDispersion ? 1 : 0) << "\n";
  }
  out.text("chain.txt", [&](std::ostream& os) { report.write(os); });
  long failures = 0;
  for (const auto& row : report.rows) failures += row.pass ? 0 : 1;
  out.json("summary.json", Json{{"grid", grid_json(mask)},
                                {"points", report.rows.size()},
                                {"violations", failures},
                                {"result", report.passed() ? "PASS" : "FAIL"}});
  return status;
}

int cmd_super(const RunConfig& c, const Artifacts& out) {
  const auto spec = domain_of(c);
  const auto mask = mask_of(c, spec);
  const auto options = solver_options(c);
  const auto halves = weyl::split_separated(mask, c.split_angle * std::numbers::pi / 180.0);
  std::vector<weyl::GridMask> nonempty;
  for (const auto& part : halves) {
    if (!part.empty()) nonempty.push_back(part);
  }
  if (nonempty.size() < 2) throw weyl::InputError("--split-angle: the split leaves an empty part");
  const auto lambdas = lambdas_for(c, {mask}, kAllProblems, options);

  weyl::SuperadditivityReport report;
  int status = kExitOk;
  try {
    report = weyl::superadditivity_check(mask, nonempty, lambdas, options);
  } catch (const weyl::SuperadditivityViolation& e) {
    report = e.report();
    status = kExitInvariant;
  }

  auto csv = out.csv("super.csv", "problem,lambda,whole,part_1,part_2,pass");
  for (const auto& row : report.rows) {
    csv << weyl::to_string(row.problem) << "," << number(row.lambda) << "," << row.whole;
    for (long p : row.parts) csv << "," << p;
    csv << "," << (row.pass ? 1 : 0) << "\n";
  }
  out.text("super.txt", [&](std::ostream& os) { report.write(os); });
  long failures = 0;
  for (const auto& row : report.rows) failures += row.pass ? 0 : 1;
  out.json("summary.json", Json{{"grid", grid_json(mask)},
                                {"part_nodes", {nonempty[0].size(), nonempty[1].size()}},
                                {"points", lambdas.size()},
                                {"violations", failures},
                                {"result", report.passed() ? "PASS" : "FAIL"}});
  return status;
}

int cmd_cover(const RunConfig& c, const Artifacts& out) {
  const auto spec = domain_of(c);
  const int n = spec.dimension();
  const double volume = weyl::volume(spec);
  const auto cover = weyl::cube_cover(spec, *c.eta);
  if (cover.empty()) throw weyl::InputError("--eta: no cube of side eta/sqrt(n) fits inside the domain");
  if (auto_count(c.lambdas)) throw weyl::InputError("--lambdas: cover needs an explicit list");
  const auto lambdas = parse_list(c.lambdas, "--lambdas");
  const auto options = solver_options(c);

  std::optional<weyl::GridMask> mask;
  std::vector<long> grid_counts(lambdas.size(), -1);
  if (c.h) {
    mask = weyl::rasterize(spec, *c.h);
    const auto op = weyl::assemble_dirichlet_laplacian(*mask);
    weyl::parallel_for(lambdas.size(), [&](std::size_t i) {
      if (lambdas[i] * mask->h() * mask->h() <= weyl::kTrustDispersion) {
        grid_counts[i] = weyl::inertia_count_with_retry(op, lambdas[i], options);
      }
    });
  }

  auto csv = out.csv("cover.csv",
                     "lambda,cube_bound,weyl_covered,bound_ratio,weyl_full,grid_count,grid_trusted");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double power = std::pow(lambdas[i], 0.5 * n);
    const long bound = weyl::cube_lower_bound(cover, lambdas[i]);
    const double covered = weyl::weyl_constant(n, cover.covered_volume) * power;
    csv << number(lambdas[i]) << "," << bound << "," << number(covered) << ","
        << number(ratio(bound, covered)) << "," << number(weyl::weyl_constant(n, volume) * power) << ",";
    if (grid_counts[i] >= 0) {
      csv << grid_counts[i] << ",1\n";
    } else {
      csv << ",0\n";
    }
  }
  out.json("summary.json", Json{{"eta", cover.eta},
                                {"side", cover.side},
                                {"cubes", cover.cubes.size()},
                                {"covered_volume", cover.covered_volume},
                                {"volume", volume},
                                {"covered_fraction", cover.covered_volume / volume}});
  return kExitOk;
}

struct HeatInputs {
  weyl::Spectrum spectrum;
  int dimension;
  double volume;
  Json grid;
};

HeatInputs heat_inputs(const RunConfig& c) {
  const auto spec = domain_of(c);
  const int n = spec.dimension();
  const double volume = weyl::volume(spec);
  if (has_grid(c, spec)) {
    const auto mask = mask_of(c, spec);
    return {grid_spectrum(mask, weyl::Problem::dirichlet, c.k, solver_options(c)), n, volume,
            grid_json(mask)};
  }
  if (!c.lambda_max) throw weyl::InputError("--lambda-max is required for a closed-form spectrum");
  return {analytic_spectrum(spec, *c.lambda_max), n, volume, nullptr};
}

const char* source_name(const weyl::SpectrumSource& s) {
  switch (s.kind) {
    case weyl::SpectrumSource::Kind::grid: return "grid";
    case weyl::SpectrumSource::Kind::analytic: return "analytic";
    case weyl::SpectrumSource::Kind::synthetic: return "synthetic";
  }
  return "?";
}

/// Writes heat.csv; returns the bound report (never throws on a violation).
weyl::HeatBoundReport write_heat(const HeatInputs& in, const weyl::HeatTraceSamples& samples,
                                 const Artifacts& out) {
  auto advisory = samples;
  advisory.source = weyl::SpectrumSource::grid(0.0);
  auto report = weyl::heat_upper_bound_check(advisory, in.dimension, in.volume);
  report.advisory = samples.source.kind == weyl::SpectrumSource::Kind::grid;

  auto csv = out.csv("heat.csv", "t,h,tail_bound,tail_ratio,trusted,scaled,bound,bound_pass");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& row = report.rows[i];
    csv << number(samples.times[i]) << "," << number(samples.values[i]) << ","
        << number(samples.tail_bounds[i]) << "," << number(samples.tail_bounds[i] / samples.values[i])
        << "," << (samples.trusted[i] ? 1 : 0) << "," << number(row.scaled) << "," << number(row.bound)
        << "," << (row.pass ? 1 : 0) << "\n";
  }
  return report;
}

int cmd_heat(const RunConfig& c, const Artifacts& out) {
  const auto in = heat_inputs(c);
  const auto times = parse_times(c.times);
  const auto samples = weyl::heat_trace(in.spectrum, times, weyl::TailModel{in.dimension, in.volume});
  const auto report = write_heat(in, samples, out);
  double worst_identity = 0.0;
  for (double t : times) worst_identity = std::max(worst_identity, weyl::laplace_identity_check(in.spectrum, t));
  out.json("summary.json", Json{{"source", source_name(in.spectrum.source())},
                                {"grid", in.grid},
                                {"eigenvalues", in.spectrum.size()},
                                {"cutoff", number(in.spectrum.cutoff())},
                                {"volume", in.volume},
                                {"samples", samples.size()},
                                {"trusted", samples.trusted_count()},
                                {"bound_advisory", report.advisory},
                                {"bound_passed", report.passed()},
                                {"laplace_identity_residual", worst_identity}});
  if (!report.advisory && !report.passed()) {
    throw weyl::InvariantViolation("heat-trace upper bound violated on a closed-form spectrum; see heat.csv");
  }
  return kExitOk;
}

int cmd_karamata(const RunConfig& c, const Artifacts& out) {
  const auto in = heat_inputs(c);
  const auto times = parse_times(c.times);
  const auto samples = weyl::heat_trace(in.spectrum, times, weyl::TailModel{in.dimension, in.volume});
  write_heat(in, samples, out);
  const auto estimate = weyl::karamata_estimate(samples, in.dimension, c.window);
  const double expected = std::pow(4.0 * std::numbers::pi, -0.5 * in.dimension) * in.volume;
  out.json("karamata.json",
           Json{{"source", source_name(in.spectrum.source())},
                {"grid", in.grid},
                {"volume", in.volume},
                {"coefficient", estimate.coefficient},
                {"expected_coefficient", expected},
                {"relative_error", estimate.coefficient / expected - 1.0},
                {"counting_constant", estimate.counting_constant},
                {"weyl_constant", weyl::weyl_constant(in.dimension, in.volume)},
                {"boundary_coefficient", estimate.boundary_coefficient},
                {"offset", estimate.offset},
                {"window", {estimate.window.first, estimate.window.second}},
                {"residual", estimate.residual},
                {"condition", estimate.condition},
                {"samples_used", estimate.samples_used}});
  return kExitOk;
}

int cmd_oracle(const RunConfig& c, const Artifacts& out) {
  const auto spec = domain_of(c);
  const auto spectrum = analytic_spectrum(spec, *c.lambda_max);
  auto csv = out.csv("oracle.csv", "index,value");
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    csv << j + 1 << "," << number(spectrum.values()[j]) << "\n";
  }
  const int n = spec.dimension();
  const double weyl_term =
      weyl::weyl_constant(n, weyl::volume(spec)) * std::pow(*c.lambda_max, 0.5 * n);
  out.json("summary.json", Json{{"kind", weyl::to_string(spec.kind())},
                                {"volume", weyl::volume(spec)},
                                {"cutoff", *c.lambda_max},
                                {"eigenvalues", spectrum.size()},
                                {"weyl_ratio_at_cutoff", ratio(static_cast<long>(spectrum.size()), weyl_term)}});
  return kExitOk;
}

int dispatch(const RunConfig& c, const Artifacts& out) {
  switch (c.command) {
    case Command::solve: return cmd_solve(c, out);
    case Command::count: return cmd_count(c, out);
    case Command::chain: return cmd_chain(c, out);
    case Command::super: return cmd_super(c, out);
    case Command::cover: return cmd_cover(c, out);
    case Command::heat: return cmd_heat(c, out);
    case Command::karamata: return cmd_karamata(c, out);
    case Command::oracle: return cmd_oracle(c, out);
  }
  return kExitConfig;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace

int run(const RunConfig& config, std::ostream& diagnostics) {
  std::ofstream log;
  try {
    validate(config);
    fs::create_directories(config.output_dir);
    log.open(config.output_dir / "run.log", std::ios::app);
    if (!log) throw weyl::InputError("--output-dir: cannot write to " + config.output_dir.string());
  } catch (const weyl::InputError& e) {
    diagnostics << "weylcheck: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    diagnostics << "weylcheck: --output-dir: " << e.what() << "\n";
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  log << timestamp() << " start " << to_string(config.command) << " " << to_json(config).dump()
      << " threads=" << weyl::thread_count() << "\n";
  int status = kExitOk;
  std::string message;
  try {
    status = dispatch(config, Artifacts(config));
    if (status == kExitInvariant) message = "exact invariant violated; see the report";
  } catch (const weyl::InputError& e) {
    status = kExitConfig;
    message = e.what();
  } catch (const weyl::Error& e) {
    status = kExitNumerical;
    message = e.what();
  } catch (const std::bad_alloc&) {
    status = kExitNumerical;
    message = "out of memory";
  } catch (const std::exception& e) {
    status = kExitConfig;
    message = e.what();
  }
  if (!message.empty()) diagnostics << "weylcheck: " << message << "\n";
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log << timestamp() << " exit " << status << " after " << number(seconds) << " s";
  if (!message.empty()) log << ": " << message;
  log << "\n";
  return status;
}

}  // namespace weylcheck
