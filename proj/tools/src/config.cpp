#include "weylcheck/config.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "CLI11.hpp"

#include <weyl/errors.hpp>

namespace weylcheck {

namespace {

constexpr std::array<std::pair<const char*, Command>, 8> kCommands{{
    {"solve", Command::solve},
    {"count", Command::count},
    {"chain", Command::chain},
    {"super", Command::super},
    {"cover", Command::cover},
    {"heat", Command::heat},
    {"karamata", Command::karamata},
    {"oracle", Command::oracle},
}};

const char* describe(Command command) {
  switch (command) {
    case Command::solve: return "lowest eigenvalues of one problem on a grid";
    case Command::count: return "counting function by matrix inertia";
    case Command::chain: return "exact check of N_b <= N_bl <= N_D";
    case Command::super: return "exact superadditivity on a separated split";
    case Command::cover: return "cube-cover lower bound for the Dirichlet count";
    case Command::heat: return "heat-trace samples and the free-space upper bound";
    case Command::karamata: return "leading heat-trace coefficient by a two-term fit";
    case Command::oracle: return "closed-form spectrum of an interval, rectangle, or disk";
  }
  return "";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw weyl::InputError(message);
}

bool uses_lambdas(Command c) {
  return c == Command::count || c == Command::chain || c == Command::super || c == Command::cover;
}

bool uses_times(Command c) { return c == Command::heat || c == Command::karamata; }

}  // namespace

const char* to_string(Command command) noexcept {
  for (const auto& [name, value] : kCommands) {
    if (value == command) return name;
  }
  return "?";
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = to_string(c.command);
  if (c.domain_path) j["domain"] = c.domain_path->generic_string();
  if (c.rectangle) j["rectangle"] = {(*c.rectangle)[0], (*c.rectangle)[1]};
  if (c.interval) j["interval"] = *c.interval;
  if (c.disk) j["disk"] = *c.disk;
  if (c.h) j["h"] = *c.h;
  j["k"] = c.k;
  j["problem"] = weyl::to_string(c.problem);
  if (!c.lambdas.empty()) j["lambdas"] = c.lambdas;
  if (!c.times.empty()) j["times"] = c.times;
  if (c.lambda_max) j["lambda_max"] = *c.lambda_max;
  if (c.eta) j["eta"] = *c.eta;
  if (c.command == Command::super) j["split_angle"] = c.split_angle;
  if (c.window) j["window"] = {c.window->first, c.window->second};
  j["dense_limit"] = c.dense_limit;
  j["tol"] = c.tol;
  j["shift_retries"] = c.shift_retries;
  return j;
}

void validate(const RunConfig& c) {
  const int domains = static_cast<int>(c.domain_path.has_value()) +
                      static_cast<int>(c.rectangle.has_value()) +
                      static_cast<int>(c.interval.has_value()) + static_cast<int>(c.disk.has_value());
  require(domains == 1, "exactly one of --domain, --rectangle, --interval, --disk is required");
  if (c.rectangle) {
    require((*c.rectangle)[0] > 0.0 && (*c.rectangle)[1] > 0.0, "--rectangle: sides must be positive");
  }
  if (c.interval) require(*c.interval > 0.0, "--interval: length must be positive");
  if (c.disk) require(*c.disk > 0.0, "--disk: radius must be positive");
  if (c.h) require(*c.h > 0.0 && std::isfinite(*c.h), "--h: must be positive");
  require(c.k >= 1, "--k: must be at least 1");
  require(c.dense_limit >= 1, "--dense-limit: must be at least 1");
  require(c.tol > 0.0 && c.tol < 1.0, "--tol: must lie in (0, 1)");
  require(c.shift_retries >= 0, "--shift-retries: must be nonnegative");
  if (c.lambda_max) require(*c.lambda_max > 0.0, "--lambda-max: must be positive");
  if (c.eta) require(*c.eta > 0.0, "--eta: must be positive");
  if (c.window) {
    require(c.window->first > 0.0 && c.window->second > c.window->first,
            "--window: need 0 < lo < hi");
  }
  if (uses_lambdas(c.command)) require(!c.lambdas.empty(), "--lambdas is required");
  if (uses_times(c.command)) require(!c.times.empty(), "--times is required");
  if (c.command == Command::cover) require(c.eta.has_value(), "--eta is required");
  if (c.command == Command::oracle) require(c.lambda_max.has_value(), "--lambda-max is required");
  if (c.command == Command::super || c.command == Command::chain) {
    require(c.problem == weyl::Problem::dirichlet, "--problem: chain and super always use all three");
  }
  if (uses_times(c.command)) {
    require(c.problem == weyl::Problem::dirichlet, "--problem: the heat trace is a Dirichlet quantity");
  }
}

weyl::SolverOptions solver_options(const RunConfig& c) {
  weyl::SolverOptions options;
  options.dense_limit = c.dense_limit;
  options.tol = c.tol;
  options.shift_retries = c.shift_retries;
  return options;
}

std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv,
                                                std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Spectra and Weyl-law checks for Dirichlet, buckling, and bilaplacian problems",
               "weylcheck"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);

  std::string domain, problem = "dirichlet", output_dir = ".";
  std::vector<double> rectangle, window;
  double interval = 0.0, disk = 0.0, h = 0.0, lambda_max = 0.0, eta = 0.0;

  const std::map<std::string, weyl::Problem> problems{
      {"dirichlet", weyl::Problem::dirichlet},
      {"buckling", weyl::Problem::buckling},
      {"bilaplacian", weyl::Problem::bilaplacian_root},
      {"bilaplacian_root", weyl::Problem::bilaplacian_root}};

  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, command] : kCommands) {
    auto* sub = app.add_subcommand(name, describe(command));
    subs.emplace_back(sub, command);
    sub->add_option("--domain", domain, "domain description (JSON)");
    sub->add_option("--rectangle", rectangle, "rectangle (0,a)x(0,b)")->expected(2);
    sub->add_option("--interval", interval, "interval (0,a)");
    sub->add_option("--disk", disk, "disk of radius R at the origin");
    sub->add_option("--h", h, "grid spacing");
    sub->add_option("--k", config.k, "number of eigenvalues (solve, heat, karamata on grids)");
    sub->add_option("--problem", problem, "dirichlet | buckling | bilaplacian")
        ->check(CLI::IsMember(problems));
    sub->add_option("--lambdas", config.lambdas, "auto:K or a comma-separated list");
    sub->add_option("--times", config.times, "log:LO:HI:K or a comma-separated list");
    sub->add_option("--lambda-max", lambda_max, "spectral cutoff for analytic spectra");
    sub->add_option("--eta", eta, "inner-domain distance for the cube cover");
    sub->add_option("--split-angle", config.split_angle, "normal of the splitting line, degrees");
    sub->add_option("--window", window, "fit window LO HI in t")->expected(2);
    sub->add_option("--output-dir", output_dir, "directory for artifacts");
    sub->add_option("--dense-limit", config.dense_limit, "largest dense eigenproblem");
    sub->add_option("--tol", config.tol, "relative residual tolerance");
    sub->add_option("--shift-retries", config.shift_retries,
                    "perturbed retries when an inertia shift hits an eigenvalue");
    sub->add_flag("--dump-operator", config.dump_operator, "write the assembled matrices (solve)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  for (const auto& [sub, command] : subs) {
    if (!sub->parsed()) continue;
    config.command = command;
    if (sub->count("--domain") > 0) config.domain_path = domain;
    if (sub->count("--rectangle") > 0) config.rectangle = std::array<double, 2>{rectangle[0], rectangle[1]};
    if (sub->count("--interval") > 0) config.interval = interval;
    if (sub->count("--disk") > 0) config.disk = disk;
    if (sub->count("--h") > 0) config.h = h;
    if (sub->count("--lambda-max") > 0) config.lambda_max = lambda_max;
    if (sub->count("--eta") > 0) config.eta = eta;
    if (sub->count("--window") > 0) config.window = std::make_pair(window[0], window[1]);
  }
  config.problem = problems.at(problem);
  config.output_dir = output_dir;

  try {
    validate(config);
  } catch (const weyl::InputError& e) {
    err << "weylcheck: " << e.what() << "\n";
    return 2;
  }
  return config;
}

}  // namespace weylcheck
