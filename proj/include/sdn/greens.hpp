#pragma once

// Fundamental solution q, the Green's function G of the quarter ball built by
// the method of images, their gradients, and the flat-face boundary kernels.

#include <array>

#include "sdn/geometry.hpp"
#include "sdn/specfun.hpp"

namespace sdn {

/// Exponent s of the image prefactor -(R/R0)^s.
///
/// `kelvin` uses s = 1 + 2 alpha + 2 beta, the only value for which G vanishes
/// on the sphere. `printed` uses s = 3 - 2 alpha + 2 beta and is
/// kept for the discriminating boundary test.
enum class ImageScaling { kelvin, printed };

struct KernelContext {
  Parameters params;
  double k = 0.0;  ///< normalization_k(params)
  SeriesControl ctl;
  InversionSign inversion_sign = InversionSign::kelvin;
  ImageScaling image_scaling = ImageScaling::kelvin;
};

/// Validates `params` and fills k.
KernelContext make_context(const Parameters& params, const SeriesControl& ctl = {},
                           InversionSign sign = InversionSign::kelvin,
                           ImageScaling scaling = ImageScaling::kelvin);

double image_prefactor_exponent(const Parameters& params, ImageScaling scaling);

/// k = Gamma(1-a)Gamma(b)Gamma(2-2a+2b) / (2 pi Gamma(2-2a)Gamma(2b)Gamma(1-a+b)).
double normalization_k(const Parameters& params);

/// (3/2-a+b; 1-a, b; 2-2a, 2b), the F2 parameters of q.
F2Params fundamental_params(const Parameters& params);

/// q(m, m0) = k (r^2)^{a-b-3/2} (x x0)^{1-2a} F2(xi, eta).
/// Requires non-negative x, y for both points; r^2 < 1e-12 R^2 raises SingularPointError.
double q_fundamental(const KernelContext& ctx, const Point3& m, const Point3& m0);

using Gradient = std::array<double, 3>;

/// Exact gradient of q in m; requires m.x > 0.
Gradient q_gradient(const KernelContext& ctx, const Point3& m, const Point3& m0);

/// Regular part -(R/R0)^s q(m, image(m0)).
double q_image(const KernelContext& ctx, const Point3& m, const Point3& m0);

Gradient q_image_gradient(const KernelContext& ctx, const Point3& m, const Point3& m0);

/// G = q + q_image.
double g_green(const KernelContext& ctx, const Point3& m, const Point3& m0);

Gradient g_gradient(const KernelContext& ctx, const Point3& m, const Point3& m0);

/// Outer normal derivative of G at a point of the sphere |m| = R (tolerance 1e-10 R).
double dG_dn_sphere(const KernelContext& ctx, const Point3& m_on_sphere, const Point3& m0);

/// Which closed form a boundary kernel evaluates.
///
/// `derived` is the limit of G itself, with image exponent
/// image_kernel_exponent(ctx) (zero under Kelvin scaling). `printed` reproduces
/// the alternative closed form (exponent 2 - 4 alpha, inverted power of r^2 and an
/// extra R^2/R0^2 in the image argument) and is kept only for comparison reports.
enum class KernelForm { derived, printed };

/// G*(y, z; m0) = lim_{x->0+} x^{2 alpha} dG/dx on the face x = 0.
double kernel_g_star(const KernelContext& ctx, double y, double z, const Point3& m0,
                     KernelForm form = KernelForm::derived);

/// G**(x, z; m0) = G at y = 0.
double kernel_g_star_star(const KernelContext& ctx, double x, double z, const Point3& m0,
                          KernelForm form = KernelForm::derived);

/// Richardson limit of x^{2 alpha} dG/dx over x in {1e-3, 5e-4, 2.5e-4} R.
double g_star_limit(const KernelContext& ctx, double y, double z, const Point3& m0);

/// Exponent of R/R0 in the image term of G* and G**: s - 1 - 2 alpha - 2 beta.
double image_kernel_exponent(const KernelContext& ctx);

/// The exponent 2 - 4 alpha of the alternative closed forms.
double printed_kernel_exponent(const Parameters& params);

namespace detail {

/// Derived G* with the image exponent replaced, for adjudicating candidates.
double kernel_g_star_with_exponent(const KernelContext& ctx, double y, double z, const Point3& m0,
                                   double exponent);

}  // namespace detail

}  // namespace sdn
