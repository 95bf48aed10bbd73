#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include <weyl/eigensolve.hpp>
#include <weyl/spectrum.hpp>

#include "json.hpp"

namespace weylcheck {

enum class Command { solve, count, chain, super, cover, heat, karamata, oracle };

const char* to_string(Command command) noexcept;

/// One invocation. Exactly one of domain_path / rectangle / interval / disk
/// names the domain.
struct RunConfig {
  Command command = Command::solve;
  std::optional<std::filesystem::path> domain_path;
  std::optional<std::array<double, 2>> rectangle;
  std::optional<double> interval;
  std::optional<double> disk;

  /// Grid spacing; unset means "use the analytic spectrum" where one exists.
  std::optional<double> h;
  long k = 20;
  weyl::Problem problem = weyl::Problem::dirichlet;
  /// "auto:K" or a comma-separated list.
  std::string lambdas;
  /// "log:LO:HI:K" or a comma-separated list.
  std::string times;
  std::optional<double> lambda_max;
  std::optional<double> eta;
  /// Normal direction of the splitting line, degrees.
  double split_angle = 0.0;
  std::optional<std::pair<double, double>> window;

  std::filesystem::path output_dir = ".";
  long dense_limit = 8192;
  double tol = 1e-8;
  int shift_retries = 3;
  bool dump_operator = false;
};

nlohmann::ordered_json to_json(const RunConfig& config);

/// Throws weyl::InputError naming the offending flag.
void validate(const RunConfig& config);

weyl::SolverOptions solver_options(const RunConfig& config);

/// Either a config ready to run or an exit status (0 after --help, 2 on a
/// usage error, with the message already written to `err`).
std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv,
                                                std::ostream& out, std::ostream& err);

}  // namespace weylcheck
