#pragma once

// The acceptance criteria, shared by the `verify` command and the acceptance
// test binary. Each criterion prints one line "ID PASS|FAIL measured=<v> bound=<b>",
// followed by optional "#" detail lines.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sdn/greens.hpp"

namespace sdn::acceptance {

struct Options {
  Parameters params;  ///< primary parameter set (alpha = beta = 1/4, R = 1 by default)
  InversionSign inversion_sign = InversionSign::kelvin;
  ImageScaling image_scaling = ImageScaling::kelvin;
  std::uint64_t seed = 20240531;
};

struct Outcome {
  std::string id;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::vector<std::string> details;
};

/// Stable identifiers in report order.
const std::vector<std::string>& criterion_ids();

/// Throws DomainError for an unknown id. Evaluation errors become a FAIL outcome
/// with measured = inf and the message in the details.
Outcome evaluate(const std::string& id, const Options& options);

std::string format_line(const Outcome& outcome);

/// Runs `ids` (all when empty), writes the report, returns true when every criterion passed.
bool run_suite(const std::vector<std::string>& ids, const Options& options, std::ostream& out);

}  // namespace sdn::acceptance
