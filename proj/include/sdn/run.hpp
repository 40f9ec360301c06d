#pragma once

// Executes one configured command (specfun, green, solve, verify).

#include <ostream>
#include <string>

#include "sdn/config.hpp"
#include "sdn/solver.hpp"

namespace sdn {

/// Returns the process exit status: 0 when every row succeeded and every
/// verification passed. CSV goes to config.output, or to `out` when empty;
/// a failed run leaves no CSV behind.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Reads face data from a CSV with header face,u,v,value where face is
/// omega1 (u=y, v=z), omega2 (u=x, v=z) or sphere (u=theta, v=psi).
/// Each face must cover a full tensor grid.
BoundaryData load_grid_data(const std::string& path);

}  // namespace sdn
