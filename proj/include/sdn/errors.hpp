#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdn {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point coincides (numerically) with a kernel pole.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An infinite series did not meet its tail criterion within the term budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_sum, std::size_t terms)
      : std::runtime_error(what + " (partial sum " + std::to_string(partial_sum) +
                           " after " + std::to_string(terms) + " terms)"),
        partial_sum_(partial_sum),
        terms_(terms) {}

  double partial_sum() const noexcept { return partial_sum_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  std::size_t terms_;
};

/// A numerical limit could not be extracted (extrapolants diverge).
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid run configuration.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line, std::string key)
      : std::runtime_error(format(what, line, key)), line_(line), key_(std::move(key)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(const std::string& what, std::size_t line, const std::string& key) {
    std::string out = "config error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!key.empty()) out += " [" + key + "]";
    return out + ": " + what;
  }

  std::size_t line_;
  std::string key_;
};

}  // namespace sdn
