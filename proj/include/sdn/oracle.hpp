#pragma once

// Slow reference implementations used by the tests and the acceptance suite.
// Series here are summed in __float128 and share no code with specfun.

#include <cstddef>

#include "sdn/solver.hpp"

namespace sdn::oracle {

/// F2 by row-ordered double summation when |x| + |y| < 1, otherwise (x, y <= 0)
/// by the Euler-transformed product series with every inner 2F1 summed term by
/// term. Error target 10^{-precision_digits} (at most 32 digits).
/// Throws DomainError when the arguments are in neither regime or a series diverges.
double f2_bruteforce(const F2Params& p, double x, double y, int precision_digits = 30);

/// Plain power series of 2F1 for |x| < 1 in extended precision.
double gauss_2f1_series(double a, double b, double c, double x, int precision_digits = 30);

/// ln Gamma in extended precision, for x > 0.
double ln_gamma_wide(double x);

/// normalization constant k from extended-precision Gamma values.
double normalization_k_wide(const Parameters& params);

/// 7-point central-difference H(u) at m with step h. The stencil must stay
/// strictly inside the domain and x, y > 2h.
double fd_residual(const Parameters& params, const VolumeField& u, const Point3& m, double h);

struct FluxProbe {
  Point3 m0;
  double rho = 0.01;
  std::size_t n_theta = 8;  ///< Gauss-Legendre nodes in cos(theta)
  std::size_t n_psi = 16;   ///< trapezoid nodes in psi
};

enum class FluxKernel { fundamental, green };

/// Weighted flux of q (or G) through the sphere of radius rho around m0 with
/// the normal pointing toward m0: the integral of x^{2a} y^{2b} dq/dn.
double small_sphere_flux(const KernelContext& ctx, const FluxProbe& probe,
                         FluxKernel kernel = FluxKernel::fundamental);

struct ManufacturedCase {
  BoundaryData data;
  VolumeField exact;
  double rim_mismatch = 0.0;  ///< sampled max |tau1 - phi| on the rim
};

/// Exact solution q(., pole) with the pole outside the closed domain
/// (pole.x, pole.y > 0), and the boundary data it induces.
ManufacturedCase manufactured_case(const KernelContext& ctx, const Point3& pole);

}  // namespace sdn::oracle
