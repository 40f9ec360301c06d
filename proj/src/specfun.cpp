#include "sdn/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sdn/errors.hpp"

namespace sdn {

namespace {

// Above this argument the 1-x connection formula replaces the power series.
constexpr double kConnectionThreshold = 0.9;
// c-a-b closer than this to an integer makes the connection formula cancel.
constexpr double kIntegerGap = 1e-4;

class TailCounter {
 public:
  explicit TailCounter(double rel_tol) : rel_tol_(rel_tol) {}

  bool converged(double term_magnitude, double sum) {
    if (term_magnitude <= rel_tol_ * std::abs(sum)) {
      ++small_;
    } else {
      small_ = 0;
    }
    return small_ >= 3;
  }

 private:
  double rel_tol_;
  int small_ = 0;
};

// Terms of a series with ratio -> q leave a tail of about term / (1 - q).
double geometric_tail_factor(double q) {
  return q < 1.0 ? 1.0 / (1.0 - q) : 1.0;
}

double signed_ln_gamma(double x, int& sign) {
  return ::lgamma_r(x, &sign);
}

// Plain power series of 2F1; terminates early for polynomial cases.
double series_2f1(double a, double b, double c, double x, const SeriesControl& ctl) {
  double term = 1.0;
  double sum = 1.0;
  TailCounter tail(ctl.rel_tol);
  const double tail_factor = geometric_tail_factor(std::abs(x));
  for (std::size_t n = 0; n < ctl.max_terms; ++n) {
    const double k = static_cast<double>(n);
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (term == 0.0) return sum;
    if (tail.converged(std::abs(term) * tail_factor, sum)) return sum;
  }
  throw ConvergenceError("2F1 power series did not converge", sum, ctl.max_terms);
}

bool connection_usable(double a, double b, double c) {
  const double s = c - a - b;
  return std::abs(s - std::round(s)) > kIntegerGap;
}

// 2F1 on [0, 1) without further argument transformation.
double unit_interval_2f1(double a, double b, double c, double x, const SeriesControl& ctl) {
  if (x == 0.0) return 1.0;
  if (x <= kConnectionThreshold || !connection_usable(a, b, c)) {
    return series_2f1(a, b, c, x, ctl);
  }
  const double s = c - a - b;
  const double t = 1.0 - x;
  const double lead = detail::gamma_ratio(c, s, c - a, c - b);
  const double trail = detail::gamma_ratio(c, -s, a, b);
  double value = 0.0;
  if (lead != 0.0) value += lead * series_2f1(a, b, 1.0 - s, t, ctl);
  if (trail != 0.0) value += trail * std::pow(t, s) * series_2f1(c - a, c - b, 1.0 + s, t, ctl);
  return value;
}

// Backward (Miller) recurrence for f_m = 2F1(A, B+m; C+m; X), m = 0..n, X in (0,1).
//
// f_m is the minimal solution of
//   f_m + [(A-1)X - (B+m)(1+X) - (C-B)]/(C+m) f_{m+1}
//       + X (C+m+1-A)(B+m+1)/((C+m)(C+m+1)) f_{m+2} = 0,
// whose dominant companion grows like X^{-m}. Returns an empty vector when the
// anchor values computed directly disagree with the recurrence.
std::vector<double> miller_chain(double A, double B, double C, double X, std::size_t n,
                                 const SeriesControl& ctl) {
  const double pad_f = std::ceil(std::log(ctl.rel_tol * 1e-2) / std::log(X)) + 8.0;
  const std::size_t cap = 64 * std::max<std::size_t>(ctl.max_terms, 1024);
  if (!(pad_f < static_cast<double>(cap))) {
    throw ConvergenceError("Miller recurrence start index exceeds budget", 0.0, cap);
  }
  const std::size_t top = n + static_cast<std::size_t>(pad_f);

  std::vector<double> p(n + 1, 0.0);
  double next2 = 0.0;  // p_{m+2}
  double next1 = 1.0;  // p_{m+1}
  constexpr double kHuge = 1e250;
  for (std::size_t idx = top; idx-- > 0;) {
    const double m = static_cast<double>(idx);
    const double cm = C + m;
    const double c_one = ((A - 1.0) * X - (B + m) * (1.0 + X) - (C - B)) / cm;
    const double c_two = X * (cm + 1.0 - A) * (B + m + 1.0) / (cm * (cm + 1.0));
    const double cur = -c_one * next1 - c_two * next2;
    next2 = next1;
    next1 = cur;
    if (idx <= n) p[idx] = cur;
    if (std::abs(cur) > kHuge) {
      next1 /= kHuge;
      next2 /= kHuge;
      for (std::size_t j = idx; j <= n; ++j) p[j] /= kHuge;
    }
  }

  const double f0 = gauss_2f1(A, B, C, X, ctl);
  const double f1 = gauss_2f1(A, B + 1.0, C + 1.0, X, ctl);
  if (n == 0) {
    p[0] = f0;
    return p;
  }
  const bool anchor0 = std::abs(f0) >= std::abs(f1);
  const double anchor_p = anchor0 ? p[0] : p[1];
  if (anchor_p == 0.0 || !std::isfinite(anchor_p)) return {};
  const double scale = (anchor0 ? f0 : f1) / anchor_p;
  const double other = (anchor0 ? p[1] : p[0]) * scale;
  const double other_ref = anchor0 ? f1 : f0;
  if (std::abs(other - other_ref) > 1e-10 * std::max(std::abs(f0), std::abs(f1))) return {};
  for (double& v : p) v *= scale;
  return p;
}

double quadrant_per_term(const F2Params& p, double X, double Y, const SeriesControl& ctl) {
  double weight = 1.0;
  double sum = 0.0;
  TailCounter tail(ctl.rel_tol);
  const double xy = X * Y;
  const double tail_factor = geometric_tail_factor(xy);
  for (std::size_t i = 0; i < ctl.max_terms; ++i) {
    const double k = static_cast<double>(i);
    const double term = weight * gauss_2f1(p.c1 - p.a, p.b1 + k, p.c1 + k, X, ctl) *
                        gauss_2f1(p.c2 - p.a, p.b2 + k, p.c2 + k, Y, ctl);
    sum += term;
    if (tail.converged(std::abs(term) * tail_factor, sum)) return sum;
    weight *= (p.a + k) * (p.b1 + k) * (p.b2 + k) / ((p.c1 + k) * (p.c2 + k) * (k + 1.0)) * xy;
    if (weight == 0.0) return sum;
  }
  throw ConvergenceError("F2 decomposition did not converge", sum, ctl.max_terms);
}

// Returns NaN when a Miller chain fails its anchor check.
double quadrant_recurrence(const F2Params& p, double X, double Y, const SeriesControl& ctl) {
  const double xy = X * Y;
  const double tail_factor = geometric_tail_factor(xy);
  const double estimate = std::ceil(std::log(ctl.rel_tol * 0.1 * (1.0 - xy)) / std::log(xy)) + 8.0;
  std::size_t n = static_cast<std::size_t>(std::clamp(estimate, 16.0, 1e15));
  n = std::min(n, ctl.max_terms);

  double sum = 0.0;
  while (true) {
    const std::vector<double> f = miller_chain(p.c1 - p.a, p.b1, p.c1, X, n, ctl);
    if (f.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> g = miller_chain(p.c2 - p.a, p.b2, p.c2, Y, n, ctl);
    if (g.empty()) return std::numeric_limits<double>::quiet_NaN();

    double weight = 1.0;
    sum = 0.0;
    TailCounter tail(ctl.rel_tol);
    for (std::size_t i = 0; i <= n; ++i) {
      const double k = static_cast<double>(i);
      const double term = weight * f[i] * g[i];
      sum += term;
      if (tail.converged(std::abs(term) * tail_factor, sum) || (weight == 0.0 && i > 0)) {
        return sum;
      }
      weight *= (p.a + k) * (p.b1 + k) * (p.b2 + k) / ((p.c1 + k) * (p.c2 + k) * (k + 1.0)) * xy;
    }
    if (n >= ctl.max_terms) break;
    n = std::min(2 * n, ctl.max_terms);
  }
  throw ConvergenceError("F2 decomposition did not converge", sum, ctl.max_terms);
}

double general_decomposition(const F2Params& p, double x, double y, const SeriesControl& ctl) {
  double weight = 1.0;
  double sum = 0.0;
  TailCounter tail(ctl.rel_tol);
  const double xy = x * y;
  for (std::size_t i = 0; i < ctl.max_terms; ++i) {
    const double k = static_cast<double>(i);
    const double term = weight * gauss_2f1(p.a + k, p.b1 + k, p.c1 + k, x, ctl) *
                        gauss_2f1(p.a + k, p.b2 + k, p.c2 + k, y, ctl);
    sum += term;
    if (tail.converged(std::abs(term), sum)) return sum;
    weight *= (p.a + k) * (p.b1 + k) * (p.b2 + k) / ((p.c1 + k) * (p.c2 + k) * (k + 1.0)) * xy;
    if (weight == 0.0) return sum;
  }
  throw ConvergenceError("F2 decomposition did not converge", sum, ctl.max_terms);
}

}  // namespace

namespace detail {

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && v == std::round(v);
}

double gamma_ratio(double a1, double a2, double b1, double b2) {
  if (is_nonpositive_integer(a1) || is_nonpositive_integer(a2)) {
    throw DomainError("gamma_ratio: pole of Gamma in the numerator");
  }
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2)) return 0.0;
  int s1 = 1, s2 = 1, s3 = 1, s4 = 1;
  const double log_value = signed_ln_gamma(a1, s1) + signed_ln_gamma(a2, s2) -
                           signed_ln_gamma(b1, s3) - signed_ln_gamma(b2, s4);
  return static_cast<double>(s1 * s2 * s3 * s4) * std::exp(log_value);
}

double appell_f2_quadrant(const F2Params& p, double x, double y, const SeriesControl& ctl,
                          DecompositionPath path) {
  validate(ctl);
  validate(p);
  if (!(x <= 0.0 && y <= 0.0)) throw DomainError("appell_f2_quadrant: requires x <= 0 and y <= 0");
  // Euler/Pfaff on both factors: x^i (1-x)^{-b1-i} y^i (1-y)^{-b2-i} = prefactor (XY)^i.
  const double X = -x / (1.0 - x);
  const double Y = -y / (1.0 - y);
  const double prefactor = std::pow(1.0 - x, -p.b1) * std::pow(1.0 - y, -p.b2);
  if (X == 0.0 || Y == 0.0) {
    return prefactor * gauss_2f1(p.c1 - p.a, p.b1, p.c1, X, ctl) *
           gauss_2f1(p.c2 - p.a, p.b2, p.c2, Y, ctl);
  }
  switch (path) {
    case DecompositionPath::per_term:
      return prefactor * quadrant_per_term(p, X, Y, ctl);
    case DecompositionPath::recurrence: {
      const double s = quadrant_recurrence(p, X, Y, ctl);
      if (std::isnan(s)) throw ConvergenceError("Miller recurrence anchor mismatch", 0.0, 0);
      return prefactor * s;
    }
    case DecompositionPath::automatic:
      break;
  }
  const double s = quadrant_recurrence(p, X, Y, ctl);
  if (!std::isnan(s)) return prefactor * s;
  return prefactor * quadrant_per_term(p, X, Y, ctl);
}

}  // namespace detail

void validate(const SeriesControl& ctl) {
  if (!(ctl.rel_tol > 0.0)) throw DomainError("SeriesControl: rel_tol must be positive");
  if (ctl.max_terms < 1) throw DomainError("SeriesControl: max_terms must be at least 1");
}

void validate(const F2Params& p) {
  if (detail::is_nonpositive_integer(p.c1) || detail::is_nonpositive_integer(p.c2)) {
    throw DomainError("F2Params: c1 and c2 must not be zero or negative integers");
  }
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive");
  int sign = 1;
  return signed_ln_gamma(x, sign);
}

double pochhammer(double a, std::size_t n) {
  double value = 1.0;
  for (std::size_t k = 0; k < n; ++k) value *= a + static_cast<double>(k);
  return value;
}

double gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctl) {
  validate(ctl);
  if (detail::is_nonpositive_integer(c)) {
    throw DomainError("gauss_2f1: c must not be zero or a negative integer");
  }
  if (!(x <= 1.0)) throw DomainError("gauss_2f1: argument must satisfy x <= 1");
  if (x == 1.0) return gauss_2f1_at_one(a, b, c);
  if (x == 0.0) return 1.0;
  if (x < 0.0) {
    const double mapped = -x / (1.0 - x);
    return std::pow(1.0 - x, -b) * unit_interval_2f1(c - a, b, c, mapped, ctl);
  }
  return unit_interval_2f1(a, b, c, x, ctl);
}

double gauss_2f1_at_one(double a, double b, double c) {
  if (detail::is_nonpositive_integer(c)) {
    throw DomainError("gauss_2f1_at_one: c must not be zero or a negative integer");
  }
  if (!(c - a - b > 0.0)) throw DomainError("gauss_2f1_at_one: requires c - a - b > 0");
  if (!(c - a > 0.0) || !(c - b > 0.0)) {
    throw DomainError("gauss_2f1_at_one: requires c - a > 0 and c - b > 0");
  }
  return detail::gamma_ratio(c, c - a - b, c - a, c - b);
}

double appell_f2_direct(const F2Params& p, double x, double y, const SeriesControl& ctl) {
  validate(ctl);
  validate(p);
  if (!(std::abs(x) + std::abs(y) < 1.0)) {
    throw DomainError("appell_f2_direct: requires |x| + |y| < 1");
  }
  // diagonal[i] holds the term with indices (i, n - i) of the current diagonal n.
  std::vector<double> diagonal{1.0};
  double first_column = 1.0;  // term (n, 0)
  double sum = 1.0;
  TailCounter tail(ctl.rel_tol);
  for (std::size_t n = 1; n <= ctl.max_terms; ++n) {
    double magnitude = 0.0;
    double diag_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ii = static_cast<double>(i);
      const double j = static_cast<double>(n - i);
      diagonal[i] *= (p.a + ii + j - 1.0) * (p.b2 + j - 1.0) * y / ((p.c2 + j - 1.0) * j);
    }
    const double nn = static_cast<double>(n);
    first_column *= (p.a + nn - 1.0) * (p.b1 + nn - 1.0) * x / ((p.c1 + nn - 1.0) * nn);
    diagonal.push_back(first_column);
    for (double t : diagonal) {
      diag_sum += t;
      magnitude += std::abs(t);
    }
    sum += diag_sum;
    if (magnitude == 0.0 || tail.converged(magnitude, sum)) return sum;
  }
  throw ConvergenceError("F2 double series did not converge", sum, ctl.max_terms);
}

double appell_f2(const F2Params& p, double x, double y, const SeriesControl& ctl) {
  validate(ctl);
  validate(p);
  if (x == 0.0 && y == 0.0) return 1.0;
  if (x <= 0.0 && y <= 0.0) {
    return detail::appell_f2_quadrant(p, x, y, ctl, detail::DecompositionPath::automatic);
  }
  if (std::abs(x) + std::abs(y) < 1.0) return general_decomposition(p, x, y, ctl);
  throw DomainError("appell_f2: arguments outside x, y <= 0 and |x| + |y| < 1");
}

std::pair<double, double> appell_f2_partials(const F2Params& p, double x, double y,
                                             const SeriesControl& ctl) {
  const F2Params px{p.a + 1.0, p.b1 + 1.0, p.b2, p.c1 + 1.0, p.c2};
  const F2Params py{p.a + 1.0, p.b1, p.b2 + 1.0, p.c1, p.c2 + 1.0};
  const double dx = p.a * p.b1 / p.c1 * appell_f2(px, x, y, ctl);
  const double dy = p.a * p.b2 / p.c2 * appell_f2(py, x, y, ctl);
  return {dx, dy};
}

}  // namespace sdn
