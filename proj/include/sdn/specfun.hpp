#pragma once

// Scalar special functions: Gamma, Pochhammer, Gauss 2F1 on (-inf, 1] and the
// Appell function F2, including its continuation to the quadrant x, y <= 0.

#include <cstddef>
#include <utility>

namespace sdn {

/// Parameters (a; b1, b2; c1, c2) of an Appell F2 evaluation.
struct F2Params {
  double a = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;
};

/// Truncation policy shared by every infinite series in the library.
///
/// A series stops once the latest term is below rel_tol * |partial sum| for
/// three consecutive terms. Exceeding max_terms raises ConvergenceError.
struct SeriesControl {
  double rel_tol = 1e-14;
  std::size_t max_terms = 10000;
};

void validate(const SeriesControl& ctl);
void validate(const F2Params& p);

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Rising factorial a (a+1) ... (a+n-1) by iterated product.
double pochhammer(double a, std::size_t n);

/// Gauss hypergeometric function 2F1(a, b; c; x) for x <= 1.
///
/// Dispatch: power series on [0, 0.9], the 1-x connection formula above that
/// (when c-a-b is not an integer), Euler/Pfaff
/// 2F1(a,b;c;x) = (1-x)^{-b} 2F1(c-a,b;c;x/(x-1)) for x < 0, and the Gauss
/// summation formula at x = 1.
double gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctl = {});

/// Gauss summation Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).
/// Requires c-a-b > 0, c-a > 0, c-b > 0.
double gauss_2f1_at_one(double a, double b, double c);

/// Double-series definition of F2, summed by diagonals; |x| + |y| < 1.
double appell_f2_direct(const F2Params& p, double x, double y, const SeriesControl& ctl = {});

/// F2 through the decomposition into products of Gauss functions.
///
/// Supported regimes: x <= 0 and y <= 0 (any magnitude), or |x| + |y| < 1.
double appell_f2(const F2Params& p, double x, double y, const SeriesControl& ctl = {});

/// (dF2/dx, dF2/dy) from the parameter-shifted F2 values.
std::pair<double, double> appell_f2_partials(const F2Params& p, double x, double y,
                                             const SeriesControl& ctl = {});

namespace detail {

/// Which inner evaluation the decomposition uses in the quadrant x, y <= 0.
enum class DecompositionPath {
  automatic,   ///< backward recurrence, verified, with per-term fallback
  recurrence,  ///< backward (Miller) recurrence only
  per_term,    ///< one gauss_2f1 call per factor and term
};

double appell_f2_quadrant(const F2Params& p, double x, double y, const SeriesControl& ctl,
                          DecompositionPath path);

/// Gamma(a1)Gamma(a2) / (Gamma(b1)Gamma(b2)) for real arguments; a pole in the
/// denominator gives 0, a pole in the numerator raises DomainError.
double gamma_ratio(double a1, double a2, double b1, double b2);

bool is_nonpositive_integer(double v);

}  // namespace detail

}  // namespace sdn
