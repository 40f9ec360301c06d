// Runs every acceptance criterion, then two discriminating runs that must fail:
// the alternative inversion sign and the alternative image prefactor.

#include <iostream>

#include "sdn/acceptance.hpp"

namespace acc = sdn::acceptance;

namespace {

bool expect_failure(const std::string& label, const acc::Options& options) {
  acc::Outcome o = acc::evaluate("G-BOUNDARY", options);
  o.id = "G-BOUNDARY[" + label + "]";
  std::cout << acc::format_line(o) << (o.pass ? "  (unexpected: should fail)" : "  (expected failure)") << '\n';
  for (const std::string& d : o.details) std::cout << "#   " << d << '\n';
  return !o.pass;
}

}  // namespace

int main() {
  const acc::Options options;
  bool ok = acc::run_suite({}, options, std::cout);

  acc::Options paper_sign = options;
  paper_sign.inversion_sign = sdn::InversionSign::paper;
  ok = expect_failure("inversion_sign=paper", paper_sign) && ok;

  acc::Options printed = options;
  printed.image_scaling = sdn::ImageScaling::printed;
  ok = expect_failure("image_scaling=printed", printed) && ok;

  std::cout << (ok ? "acceptance: all criteria passed\n" : "acceptance: FAILED\n");
  return ok ? 0 : 1;
}
