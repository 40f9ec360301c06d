#include "sdn/oracle.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdn/errors.hpp"

namespace sdn::oracle {

namespace {

using wide = __float128;

constexpr std::size_t kMaxRows = 20000;
constexpr std::size_t kMaxSeries = 2000000;

wide tolerance(int digits) {
  const int d = std::clamp(digits, 1, 32);
  return powq(static_cast<wide>(10), static_cast<wide>(-d - 2));
}

wide abs_wide(wide v) { return v < 0 ? -v : v; }

// Inner row sum_j (a+i)_j (b2)_j / ((c2)_j j!) y^j, scaled by its first term.
wide row_sum(wide a_i, wide b2, wide c2, wide y, wide tol) {
  wide term = 1;
  wide sum = 1;
  int small = 0;
  for (std::size_t j = 0; j < kMaxSeries; ++j) {
    const wide jj = static_cast<wide>(j);
    term *= (a_i + jj) * (b2 + jj) / ((c2 + jj) * (jj + 1)) * y;
    sum += term;
    if (term == 0) return sum;
    small = abs_wide(term) <= tol * abs_wide(sum) ? small + 1 : 0;
    if (small >= 5) return sum;
  }
  throw DomainError("f2_bruteforce: row series did not converge");
}

wide direct_sum(const F2Params& p, wide x, wide y, wide tol) {
  const wide a = p.a, b1 = p.b1, b2 = p.b2, c1 = p.c1, c2 = p.c2;
  wide lead = 1;  // (a)_i (b1)_i / ((c1)_i i!) x^i
  wide sum = 0;
  int small = 0;
  for (std::size_t i = 0; i < kMaxRows; ++i) {
    const wide ii = static_cast<wide>(i);
    const wide row = lead * row_sum(a + ii, b2, c2, y, tol);
    sum += row;
    small = abs_wide(row) <= tol * abs_wide(sum) ? small + 1 : 0;
    if (small >= 5 || (lead == 0 && i > 0)) return sum;
    lead *= (a + ii) * (b1 + ii) / ((c1 + ii) * (ii + 1)) * x;
  }
  throw DomainError("f2_bruteforce: double series did not converge");
}

wide series_2f1(wide a, wide b, wide c, wide x, wide tol) {
  wide term = 1;
  wide sum = 1;
  int small = 0;
  for (std::size_t n = 0; n < kMaxSeries; ++n) {
    const wide nn = static_cast<wide>(n);
    term *= (a + nn) * (b + nn) / ((c + nn) * (nn + 1)) * x;
    sum += term;
    if (term == 0) return sum;
    small = abs_wide(term) <= tol * abs_wide(sum) ? small + 1 : 0;
    if (small >= 5) return sum;
  }
  throw DomainError("oracle: 2F1 series did not converge");
}

// (1-x)^{-b1} (1-y)^{-b2} sum_i (a)_i (b1)_i (b2)_i / ((c1)_i (c2)_i i!) (XY)^i
//   2F1(c1-a, b1+i; c1+i; X) 2F1(c2-a, b2+i; c2+i; Y), X = x/(x-1), Y = y/(y-1).
wide transformed_sum(const F2Params& p, wide x, wide y, wide tol) {
  const wide a = p.a, b1 = p.b1, b2 = p.b2, c1 = p.c1, c2 = p.c2;
  const wide X = x / (x - 1);
  const wide Y = y / (y - 1);
  const wide xy = X * Y;
  // Terms decay like (XY)^i; the tail after a term t is about t / (1 - XY).
  const wide tail = 1 / (1 - xy);
  wide weight = 1;
  wide sum = 0;
  int small = 0;
  for (std::size_t i = 0; i < kMaxRows; ++i) {
    const wide ii = static_cast<wide>(i);
    const wide term = weight * series_2f1(c1 - a, b1 + ii, c1 + ii, X, tol) *
                      series_2f1(c2 - a, b2 + ii, c2 + ii, Y, tol);
    sum += term;
    small = abs_wide(term) * tail <= tol * abs_wide(sum) ? small + 1 : 0;
    if (small >= 5 || weight == 0) break;
    weight *= (a + ii) * (b1 + ii) * (b2 + ii) / ((c1 + ii) * (c2 + ii) * (ii + 1)) * xy;
    if (i + 1 == kMaxRows) throw DomainError("f2_bruteforce: transformed series did not converge");
  }
  return powq(1 - x, -b1) * powq(1 - y, -b2) * sum;
}

bool strictly_interior(const Point3& m, double R) {
  return domain_membership(m, R) == Membership::Interior;
}

}  // namespace

double f2_bruteforce(const F2Params& p, double x, double y, int precision_digits) {
  validate(p);
  const wide tol = tolerance(precision_digits);
  if (std::abs(x) + std::abs(y) < 1.0) return static_cast<double>(direct_sum(p, x, y, tol));
  if (x <= 0.0 && y <= 0.0) return static_cast<double>(transformed_sum(p, x, y, tol));
  throw DomainError("f2_bruteforce: arguments outside both supported regimes");
}

double gauss_2f1_series(double a, double b, double c, double x, int precision_digits) {
  if (!(std::abs(x) < 1.0)) throw DomainError("gauss_2f1_series: requires |x| < 1");
  if (c <= 0.0 && c == std::round(c)) throw DomainError("gauss_2f1_series: c is a pole");
  return static_cast<double>(series_2f1(a, b, c, x, tolerance(precision_digits)));
}

double ln_gamma_wide(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma_wide: argument must be positive");
  return static_cast<double>(lgammaq(static_cast<wide>(x)));
}

double normalization_k_wide(const Parameters& params) {
  validate(params);
  const wide a = params.alpha;
  const wide b = params.beta;
  const wide log_k = lgammaq(1 - a) + lgammaq(b) + lgammaq(2 - 2 * a + 2 * b) - lgammaq(2 - 2 * a) -
                     lgammaq(2 * b) - lgammaq(1 - a + b);
  return static_cast<double>(expq(log_k) / (2 * acosq(static_cast<wide>(-1))));
}

double fd_residual(const Parameters& params, const VolumeField& u, const Point3& m, double h) {
  validate(params);
  if (!(h > 0.0)) throw DomainError("fd_residual: step must be positive");
  if (!(m.x > 2.0 * h && m.y > 2.0 * h)) throw DomainError("fd_residual: requires x, y > 2h");
  const Point3 ex{h, 0.0, 0.0}, ey{0.0, h, 0.0}, ez{0.0, 0.0, h};
  for (const Point3& s : {m, m + ex, m - ex, m + ey, m - ey, m + ez, m - ez}) {
    if (!strictly_interior(s, params.R)) throw DomainError("fd_residual: stencil leaves the domain");
  }
  const double c = u(m);
  const double xp = u(m + ex), xm = u(m - ex);
  const double yp = u(m + ey), ym = u(m - ey);
  const double zp = u(m + ez), zm = u(m - ez);
  const double laplace = (xp + xm + yp + ym + zp + zm - 6.0 * c) / (h * h);
  const double ux = (xp - xm) / (2.0 * h);
  const double uy = (yp - ym) / (2.0 * h);
  return laplace + 2.0 * params.alpha / m.x * ux + 2.0 * params.beta / m.y * uy;
}

double small_sphere_flux(const KernelContext& ctx, const FluxProbe& probe, FluxKernel kernel) {
  const double R = ctx.params.R;
  if (!strictly_interior(probe.m0, R)) throw DomainError("small_sphere_flux: m0 must be interior");
  if (!(probe.rho > 0.0) || probe.rho >= distance_to_boundary(probe.m0, R)) {
    throw DomainError("small_sphere_flux: rho must be positive and below the distance to the boundary");
  }
  if (probe.n_theta < 1 || probe.n_psi < 1) throw DomainError("small_sphere_flux: empty rule");
  const GaussRule polar = gauss_jacobi(probe.n_theta, 0.0, 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  const double d_psi = two_pi / static_cast<double>(probe.n_psi);
  const double rho = probe.rho;
  double total = 0.0;
  for (std::size_t i = 0; i < probe.n_theta; ++i) {
    const double ct = polar.nodes[i];
    const double st = std::sqrt(1.0 - ct * ct);
    double ring = 0.0;
    for (std::size_t j = 0; j < probe.n_psi; ++j) {
      const double psi = (static_cast<double>(j) + 0.5) * d_psi;
      const Point3 dir{st * std::cos(psi), st * std::sin(psi), ct};
      const Point3 m = probe.m0 + rho * dir;
      const Gradient g = kernel == FluxKernel::green ? g_gradient(ctx, m, probe.m0)
                                                     : q_gradient(ctx, m, probe.m0);
      const double inward = -(g[0] * dir.x + g[1] * dir.y + g[2] * dir.z);
      const double weight = std::pow(m.x, 2.0 * ctx.params.alpha) * std::pow(m.y, 2.0 * ctx.params.beta);
      ring += weight * inward;
    }
    total += polar.weights[i] * ring * d_psi;
  }
  return total * rho * rho;
}

ManufacturedCase manufactured_case(const KernelContext& ctx, const Point3& pole) {
  const double R = ctx.params.R;
  if (!(pole.x > 0.0 && pole.y > 0.0)) {
    throw DomainError("manufactured_case: pole needs positive x and y");
  }
  if (domain_membership(pole, R) != Membership::Outside) {
    throw DomainError("manufactured_case: pole must lie outside the closed domain");
  }
  const KernelContext kc = ctx;
  VolumeField exact = [kc, pole](const Point3& m) { return q_fundamental(kc, m, pole); };
  const double beta = ctx.params.beta;
  ManufacturedCase mc;
  mc.exact = exact;
  mc.data.tau1 = [exact](double y, double z) { return exact({0.0, y, z}); };
  mc.data.nu2 = [exact, beta, R](double x, double z) {
    return weighted_neumann_sample(exact, x, z, beta, R);
  };
  mc.data.phi = exact;
  mc.rim_mismatch = matching_mismatch(mc.data, R);
  return mc;
}

}  // namespace sdn::oracle
