#pragma once

#include <iosfwd>
#include <string>

#include "heatlab/config.hpp"

namespace heatlab {

// Executes one subcommand (solve-linear, solve-semilinear, cost-sweep,
// observability, frequency-check, telescope, bound, exhaustion) and writes
// its CSV artifact to out. Returns the process exit code: 0 on success,
// nonzero after writing a machine-readable failure row.
int run_command(const std::string& subcommand, const RunConfig& cfg, std::ostream& out);

}  // namespace heatlab
