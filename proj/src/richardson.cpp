#include "sdn/richardson.hpp"

#include <algorithm>
#include <cmath>

#include "sdn/errors.hpp"

namespace sdn {

std::vector<std::vector<double>> richardson_table(const std::vector<double>& values,
                                                  const std::vector<double>& exponents) {
  if (values.empty()) throw DomainError("richardson: no values");
  std::vector<std::vector<double>> table{values};
  const std::size_t steps = std::min(values.size() - 1, exponents.size());
  for (std::size_t j = 0; j < steps; ++j) {
    const double factor = std::pow(2.0, exponents[j]);
    const std::vector<double>& prev = table.back();
    std::vector<double> next(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      next[i] = (factor * prev[i + 1] - prev[i]) / (factor - 1.0);
    }
    table.push_back(std::move(next));
  }
  return table;
}

double richardson(const std::vector<double>& values, const std::vector<double>& exponents) {
  return richardson_table(values, exponents).back().back();
}

}  // namespace sdn
