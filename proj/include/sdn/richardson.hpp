#pragma once

#include <vector>

namespace sdn {

/// Richardson extrapolation for a sequence sampled at h, h/2, h/4, ...
///
/// `values` is ordered from the coarsest to the finest step and the error is
/// assumed to expand as sum_j c_j h^{exponents[j]}. Uses
/// min(values.size() - 1, exponents.size()) elimination steps.
double richardson(const std::vector<double>& values, const std::vector<double>& exponents);

/// Full tableau; row i holds the extrapolants after i elimination steps.
std::vector<std::vector<double>> richardson_table(const std::vector<double>& values,
                                                  const std::vector<double>& exponents);

}  // namespace sdn
