#pragma once

#include <iosfwd>

#include "weylcheck/config.hpp"

namespace weylcheck {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInvariant = 4;

/// Runs one command, writing its artifacts into config.output_dir and a
/// timestamped run.log beside them. Exit 4 only for chain or superadditivity
/// violations; any other failure is 2 (bad input) or 3 (numerics).
int run(const RunConfig& config, std::ostream& diagnostics);

}  // namespace weylcheck
