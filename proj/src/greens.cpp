#include "sdn/greens.hpp"

#include <cmath>
#include <numbers>

#include "sdn/errors.hpp"
#include "sdn/richardson.hpp"

namespace sdn {

namespace {

constexpr double kSingularRadius = 1e-12;  // relative to R^2
constexpr double kSphereTol = 1e-10;       // relative to R
constexpr double kRimTol = 1e-12;

void require_quadrant(const Point3& m, const char* who) {
  if (m.x < 0.0 || m.y < 0.0) {
    throw DomainError(std::string(who) + ": coordinates x and y must be non-negative");
  }
}

double r_power(const Parameters& p) { return p.alpha - p.beta - 1.5; }

double image_scale(const KernelContext& ctx, double r0) {
  return -std::pow(ctx.params.R / r0, image_prefactor_exponent(ctx.params, ctx.image_scaling));
}

// Shared pieces of q and its gradient at one (m, m0) pair.
struct Evaluation {
  DistanceBundle bundle;
  double prefactor = 0.0;  // k (r^2)^e (x x0)^{1-2a}
};

Evaluation prepare(const KernelContext& ctx, const Point3& m, const Point3& m0) {
  require_quadrant(m, "q_fundamental");
  require_quadrant(m0, "q_fundamental");
  Evaluation ev;
  ev.bundle = distance_bundle(m, m0);
  const double R = ctx.params.R;
  if (ev.bundle.r2 < kSingularRadius * R * R) {
    throw SingularPointError("q_fundamental: evaluation point too close to the pole");
  }
  const double xx0 = m.x * m0.x;
  if (xx0 == 0.0) return ev;
  ev.prefactor = ctx.k * std::pow(ev.bundle.r2, r_power(ctx.params)) *
                 std::pow(xx0, 1.0 - 2.0 * ctx.params.alpha);
  return ev;
}

// Common bracket of the two flat-face kernels:
// (r^2)^{+-e} F(a, b; c; -4 s s0 / r^2) with r^2 the distance on the face.
double face_term(double a, double b, double c, double s_s0, double rr, double power,
                 double arg_scale, const SeriesControl& ctl) {
  return std::pow(rr, power) * gauss_2f1(a, b, c, -4.0 * arg_scale * s_s0 / rr, ctl);
}

void require_face_point(double u, double z, double R, const char* who) {
  if (u < 0.0) throw DomainError(std::string(who) + ": face coordinate must be non-negative");
  if (u * u + z * z >= R * R * (1.0 - kRimTol)) {
    throw DomainError(std::string(who) + ": point lies on or beyond the rim");
  }
}

void require_interior_pole(const Point3& m0, double R, const char* who) {
  if (domain_membership(m0, R) != Membership::Interior) {
    throw DomainError(std::string(who) + ": m0 must be an interior point");
  }
}

}  // namespace

double normalization_k(const Parameters& params) {
  validate(params);
  const double a = params.alpha;
  const double b = params.beta;
  const double log_k = ln_gamma(1.0 - a) + ln_gamma(b) + ln_gamma(2.0 - 2.0 * a + 2.0 * b) -
                       ln_gamma(2.0 - 2.0 * a) - ln_gamma(2.0 * b) - ln_gamma(1.0 - a + b);
  return std::exp(log_k) / (2.0 * std::numbers::pi);
}

KernelContext make_context(const Parameters& params, const SeriesControl& ctl, InversionSign sign,
                           ImageScaling scaling) {
  validate(params);
  validate(ctl);
  return {params, normalization_k(params), ctl, sign, scaling};
}

double image_prefactor_exponent(const Parameters& params, ImageScaling scaling) {
  if (scaling == ImageScaling::printed) return 3.0 - 2.0 * params.alpha + 2.0 * params.beta;
  return 1.0 + 2.0 * params.alpha + 2.0 * params.beta;
}

F2Params fundamental_params(const Parameters& params) {
  const double a = params.alpha;
  const double b = params.beta;
  return {1.5 - a + b, 1.0 - a, b, 2.0 - 2.0 * a, 2.0 * b};
}

double q_fundamental(const KernelContext& ctx, const Point3& m, const Point3& m0) {
  const Evaluation ev = prepare(ctx, m, m0);
  if (ev.prefactor == 0.0) return 0.0;
  return ev.prefactor * appell_f2(fundamental_params(ctx.params), ev.bundle.xi, ev.bundle.eta, ctx.ctl);
}

Gradient q_gradient(const KernelContext& ctx, const Point3& m, const Point3& m0) {
  if (!(m.x > 0.0)) throw DomainError("q_gradient: requires x > 0");
  const Evaluation ev = prepare(ctx, m, m0);
  if (ev.prefactor == 0.0) return {0.0, 0.0, 0.0};

  const F2Params p = fundamental_params(ctx.params);
  const double xi = ev.bundle.xi;
  const double eta = ev.bundle.eta;
  const double f = appell_f2(p, xi, eta, ctx.ctl);
  const double f_up = appell_f2({p.a + 1.0, p.b1, p.b2, p.c1, p.c2}, xi, eta, ctx.ctl);
  const double f_x = appell_f2({p.a + 1.0, p.b1 + 1.0, p.b2, p.c1 + 1.0, p.c2}, xi, eta, ctx.ctl);
  const double f_y = appell_f2({p.a + 1.0, p.b1, p.b2 + 1.0, p.c1, p.c2 + 1.0}, xi, eta, ctx.ctl);

  // d/dm [ (r^2)^e F2(xi, eta) ] collapses, through the adjacent relation and
  // e = -a, to -2a/r^2 [ (m - m0) F2(a+1) + 2 (b/c) m0 F2(shifted) ] per axis.
  const double scale = -2.0 * p.a / ev.bundle.r2 * ev.prefactor;
  const double dx = scale * ((m.x - m0.x) * f_up + 2.0 * p.b1 / p.c1 * m0.x * f_x) +
                    (1.0 - 2.0 * ctx.params.alpha) / m.x * ev.prefactor * f;
  const double dy = scale * ((m.y - m0.y) * f_up + 2.0 * p.b2 / p.c2 * m0.y * f_y);
  const double dz = scale * (m.z - m0.z) * f_up;
  return {dx, dy, dz};
}

double q_image(const KernelContext& ctx, const Point3& m, const Point3& m0) {
  const Image im = invert_point(m0, ctx.params.R, ctx.inversion_sign);
  return image_scale(ctx, im.r0) * q_fundamental(ctx, m, im.image);
}

Gradient q_image_gradient(const KernelContext& ctx, const Point3& m, const Point3& m0) {
  const Image im = invert_point(m0, ctx.params.R, ctx.inversion_sign);
  const double s = image_scale(ctx, im.r0);
  Gradient g = q_gradient(ctx, m, im.image);
  for (double& c : g) c *= s;
  return g;
}

double g_green(const KernelContext& ctx, const Point3& m, const Point3& m0) {
  return q_fundamental(ctx, m, m0) + q_image(ctx, m, m0);
}

Gradient g_gradient(const KernelContext& ctx, const Point3& m, const Point3& m0) {
  const Gradient direct = q_gradient(ctx, m, m0);
  const Gradient image = q_image_gradient(ctx, m, m0);
  return {direct[0] + image[0], direct[1] + image[1], direct[2] + image[2]};
}

double dG_dn_sphere(const KernelContext& ctx, const Point3& m_on_sphere, const Point3& m0) {
  const double R = ctx.params.R;
  const double radius = norm(m_on_sphere);
  if (std::abs(radius - R) > kSphereTol * R) {
    throw DomainError("dG_dn_sphere: point is not on the sphere");
  }
  const Gradient g = g_gradient(ctx, m_on_sphere, m0);
  return (g[0] * m_on_sphere.x + g[1] * m_on_sphere.y + g[2] * m_on_sphere.z) / radius;
}

double image_kernel_exponent(const KernelContext& ctx) {
  const Parameters& p = ctx.params;
  // (R/R0)^s (x xbar0)^{1-2a} (r_image^2)^e with xbar0 = (R/R0)^2 x0 and
  // r_image^2 = (R/R0)^2 rbar^2.
  return image_prefactor_exponent(p, ctx.image_scaling) - 1.0 - 2.0 * p.alpha - 2.0 * p.beta;
}

double printed_kernel_exponent(const Parameters& params) { return 2.0 - 4.0 * params.alpha; }

namespace {

double g_star_impl(const KernelContext& ctx, double y, double z, const Point3& m0, bool printed,
                   double exponent) {
  const Parameters& p = ctx.params;
  const double R = p.R;
  require_face_point(y, z, R, "kernel_g_star");
  require_interior_pole(m0, R, "kernel_g_star");
  const double r0_sq = norm2(m0);
  const double a = 1.5 - p.alpha + p.beta;
  const double e = r_power(p);
  const double rr = m0.x * m0.x + (y - m0.y) * (y - m0.y) + (z - m0.z) * (z - m0.z);
  const double rr_bar = R * R - 2.0 * (y * m0.y + z * m0.z) + r0_sq * (y * y + z * z) / (R * R);
  const double power = printed ? -e : e;
  const double bar_scale = printed ? R * R / r0_sq : 1.0;
  const double direct = face_term(a, p.beta, 2.0 * p.beta, y * m0.y, rr, power, 1.0, ctx.ctl);
  const double image = face_term(a, p.beta, 2.0 * p.beta, y * m0.y, rr_bar, power, bar_scale, ctx.ctl);
  const double scale = std::pow(R * R / r0_sq, 0.5 * exponent);
  return ctx.k * (1.0 - 2.0 * p.alpha) * std::pow(m0.x, 1.0 - 2.0 * p.alpha) * (direct - scale * image);
}

}  // namespace

double kernel_g_star(const KernelContext& ctx, double y, double z, const Point3& m0, KernelForm form) {
  const bool printed = form == KernelForm::printed;
  const double exponent = printed ? printed_kernel_exponent(ctx.params) : image_kernel_exponent(ctx);
  return g_star_impl(ctx, y, z, m0, printed, exponent);
}

double detail::kernel_g_star_with_exponent(const KernelContext& ctx, double y, double z,
                                           const Point3& m0, double exponent) {
  return g_star_impl(ctx, y, z, m0, false, exponent);
}

double kernel_g_star_star(const KernelContext& ctx, double x, double z, const Point3& m0,
                          KernelForm form) {
  const Parameters& p = ctx.params;
  const double R = p.R;
  require_face_point(x, z, R, "kernel_g_star_star");
  require_interior_pole(m0, R, "kernel_g_star_star");
  if (x == 0.0) return 0.0;
  const double r0_sq = norm2(m0);
  const double a = 1.5 - p.alpha + p.beta;
  const double e = r_power(p);
  const double rr = (x - m0.x) * (x - m0.x) + m0.y * m0.y + (z - m0.z) * (z - m0.z);
  const double rr_bar = R * R - 2.0 * (x * m0.x + z * m0.z) + r0_sq * (x * x + z * z) / (R * R);
  const bool printed = form == KernelForm::printed;
  const double power = printed ? -e : e;
  const double bar_scale = printed ? R * R / r0_sq : 1.0;
  const double b = 1.0 - p.alpha;
  const double c = 2.0 - 2.0 * p.alpha;
  const double direct = face_term(a, b, c, x * m0.x, rr, power, 1.0, ctx.ctl);
  const double image = face_term(a, b, c, x * m0.x, rr_bar, power, bar_scale, ctx.ctl);
  const double exponent = printed ? printed_kernel_exponent(p) : image_kernel_exponent(ctx);
  const double scale = std::pow(R * R / r0_sq, 0.5 * exponent);
  return ctx.k * std::pow(x * m0.x, 1.0 - 2.0 * p.alpha) * (direct - scale * image);
}

double g_star_limit(const KernelContext& ctx, double y, double z, const Point3& m0) {
  const double R = ctx.params.R;
  require_face_point(y, z, R, "g_star_limit");
  require_interior_pole(m0, R, "g_star_limit");
  std::vector<double> values;
  for (double h : {1e-3, 5e-4, 2.5e-4}) {
    const double x = h * R;
    const Gradient g = g_gradient(ctx, {x, y, z}, m0);
    values.push_back(std::pow(x, 2.0 * ctx.params.alpha) * g[0]);
  }
  // x^{2a} dG/dx = (1-2a) h(0) + c1 x + c2 x^2 + ... with G = x^{1-2a} h(x).
  return richardson(values, {1.0, 2.0});
}

}  // namespace sdn
