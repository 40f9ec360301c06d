#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sdn/errors.hpp"
#include "sdn/greens.hpp"
#include "sdn/oracle.hpp"

using namespace sdn;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Sampler {
  std::mt19937_64 rng;
  double R;

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  Point3 interior(double lo = 0.02, double hi = 0.95, double max_radius = 0.95) {
    while (true) {
      const Point3 m{R * uniform(lo, hi), R * uniform(lo, hi), R * uniform(-max_radius, max_radius)};
      if (norm(m) <= max_radius * R) return m;
    }
  }

  Point3 on_sphere() {
    const double theta = uniform(0.0, std::numbers::pi), psi = uniform(0.0, std::numbers::pi / 2);
    return {R * std::sin(theta) * std::cos(psi), R * std::sin(theta) * std::sin(psi), R * std::cos(theta)};
  }
};

const Parameters kQuarter{0.25, 0.25, 1.0};
const Parameters kSkew{0.1, 0.4, 1.0};

}  // namespace

TEST_CASE("normalization constant") {
  CHECK(normalization_k(kQuarter) == Approx(std::sqrt(2.0) / std::numbers::pi).epsilon(1e-14));
  const double a = 0.15;
  const double equal = std::tgamma(1 - a) * std::tgamma(a) / (2 * std::numbers::pi * std::tgamma(2 - 2 * a) *
                                                               std::tgamma(2 * a));
  CHECK(normalization_k({a, a, 1.0}) == Approx(equal).epsilon(1e-14));
  CHECK(rel(normalization_k(kSkew), oracle::normalization_k_wide(kSkew)) <= 1e-14);
}

TEST_CASE("q_fundamental examples") {
  const KernelContext ctx = make_context(kQuarter);
  CHECK(q_fundamental(ctx, {0.0, 0.4, 0.1}, {0.3, 0.2, 0.0}) == 0.0);
  const Point3 m{0.5, 0.5, 0.0}, m0{0.4, 0.3, 0.1};
  const DistanceBundle d = distance_bundle(m, m0);
  const double expected = ctx.k * std::pow(d.r2, -1.5) * std::sqrt(m.x * m0.x) *
                          oracle::f2_bruteforce(fundamental_params(kQuarter), d.xi, d.eta);
  CHECK(rel(q_fundamental(ctx, m, m0), expected) <= 1e-12);
  CHECK_THROWS_AS(q_fundamental(ctx, m0, m0), SingularPointError);
  CHECK_THROWS_AS(q_fundamental(ctx, {-0.1, 0.2, 0.0}, m0), DomainError);
}

TEST_CASE("q is symmetric and its gradient matches finite differences") {
  for (const Parameters p : {kQuarter, kSkew}) {
    const KernelContext ctx = make_context(p);
    Sampler s{std::mt19937_64(31), p.R};
    const double h = 1e-5;
    for (int i = 0; i < 40; ++i) {
      const Point3 m = s.interior(0.05), m0 = s.interior(0.05);
      if (norm(m - m0) < 0.05) continue;
      CHECK(rel(q_fundamental(ctx, m, m0), q_fundamental(ctx, m0, m)) <= 1e-12);
      const Gradient g = q_gradient(ctx, m, m0);
      const Point3 steps[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
      for (int k = 0; k < 3; ++k) {
        const double fd = (q_fundamental(ctx, m + steps[k], m0) - q_fundamental(ctx, m - steps[k], m0)) / (2 * h);
        CHECK(std::abs(g[k] - fd) <= 1e-6 * std::max(std::abs(g[k]), 1e-3 * std::abs(q_fundamental(ctx, m, m0))));
      }
    }
  }
}

TEST_CASE("q gradient z-component: zero at z = z0 and antisymmetric under the swap") {
  const KernelContext ctx = make_context(kSkew);
  CHECK(q_gradient(ctx, {0.3, 0.4, 0.2}, {0.5, 0.1, 0.2})[2] == 0.0);
  const Point3 m{0.3, 0.4, 0.2}, m0{0.5, 0.1, -0.3};
  const Point3 ms{0.3, 0.4, -0.3}, m0s{0.5, 0.1, 0.2};
  CHECK(q_gradient(ctx, m, m0)[2] == Approx(-q_gradient(ctx, ms, m0s)[2]).epsilon(1e-13));
}

TEST_CASE("G vanishes on the sphere and on x = 0") {
  for (const Parameters p : {kQuarter, kSkew, Parameters{0.2, 0.3, 2.5}}) {
    const KernelContext ctx = make_context(p);
    Sampler s{std::mt19937_64(32), p.R};
    for (int i = 0; i < 20; ++i) {
      const Point3 m0 = s.interior(0.05, 0.8, 0.85);
      for (int j = 0; j < 20; ++j) {
        const Point3 m = s.on_sphere();
        CHECK(std::abs(g_green(ctx, m, m0)) <= 1e-9 * std::abs(q_fundamental(ctx, m, m0)));
      }
      CHECK(g_green(ctx, {0.0, s.uniform(0.0, 0.6) * p.R, s.uniform(-0.5, 0.5) * p.R}, m0) == 0.0);
    }
  }
}

TEST_CASE("G is symmetric and positive") {
  for (const Parameters p : {kQuarter, kSkew}) {
    const KernelContext ctx = make_context(p);
    Sampler s{std::mt19937_64(33), p.R};
    int positive = 0, pairs = 0;
    while (pairs < 500) {
      const Point3 m = s.interior(), m0 = s.interior();
      if (norm(m - m0) < 0.02) continue;
      ++pairs;
      const double g = g_green(ctx, m, m0);
      positive += g > 0.0;
      if (pairs <= 100) CHECK(std::abs(g - g_green(ctx, m0, m)) <= 1e-9 * (1.0 + std::abs(g)));
    }
    CHECK(positive == pairs);
  }
}

TEST_CASE("the alternative image prefactor breaks vanishing on the sphere") {
  const KernelContext ctx = make_context(kQuarter, {}, InversionSign::kelvin, ImageScaling::printed);
  const Point3 m0{0.3, 0.2, 0.1}, m{0.6, 0.48, 0.64};
  CHECK(std::abs(g_green(ctx, m, m0)) > 1e-3 * q_fundamental(ctx, m, m0));
  CHECK(image_prefactor_exponent(kQuarter, ImageScaling::kelvin) == Approx(2.0));
  CHECK(image_prefactor_exponent(kQuarter, ImageScaling::printed) == Approx(3.0));
}

TEST_CASE("the negated image leaves the domain of q") {
  const KernelContext ctx = make_context(kQuarter, {}, InversionSign::paper);
  CHECK_THROWS_AS(g_green(ctx, {0.5, 0.5, 0.1}, {0.3, 0.2, 0.1}), DomainError);
}

TEST_CASE("dG_dn on the sphere") {
  for (const Parameters p : {kQuarter, kSkew}) {
    const KernelContext ctx = make_context(p);
    Sampler s{std::mt19937_64(34), p.R};
    for (int i = 0; i < 30; ++i) {
      const Point3 m0 = s.interior(0.05, 0.8, 0.85);
      const Point3 m = s.on_sphere();
      if (m.x < 0.02 || m.y < 0.02) continue;
      const double dn = dG_dn_sphere(ctx, m, m0);
      const double h = 1e-5 * p.R;
      const Point3 n = (1.0 / norm(m)) * m;
      const double fd = (g_green(ctx, m + h * n, m0) - g_green(ctx, m - h * n, m0)) / (2 * h);
      CHECK(rel(dn, fd) <= 1e-6);
      CHECK(dn < 0.0);
    }
  }
  const KernelContext ctx = make_context(kSkew);
  const Point3 m0{0.3, 0.4, 0.0};
  const Point3 up{0.6, 0.48, 0.64}, down{0.6, 0.48, -0.64};
  CHECK(dG_dn_sphere(ctx, up, m0) == Approx(dG_dn_sphere(ctx, down, m0)).epsilon(1e-13));
  CHECK_THROWS_AS(dG_dn_sphere(ctx, {0.5, 0.5, 0.0}, m0), DomainError);
}

TEST_CASE("G** is the trace of G on y = 0") {
  for (const Parameters p : {kQuarter, kSkew}) {
    const KernelContext ctx = make_context(p);
    Sampler s{std::mt19937_64(35), p.R};
    for (int i = 0; i < 100; ++i) {
      const Point3 m0 = s.interior(0.05, 0.8, 0.9);
      double x, z;
      do {
        x = s.uniform(0.01, 0.95);
        z = s.uniform(-0.95, 0.95);
      } while (x * x + z * z > 0.95);
      CHECK(rel(kernel_g_star_star(ctx, x, z, m0), g_green(ctx, {x, 0.0, z}, m0)) <= 1e-10);
    }
    CHECK(kernel_g_star_star(ctx, 0.0, 0.2, {0.3, 0.3, 0.1}) == 0.0);
    CHECK(std::abs(kernel_g_star_star(ctx, 1e-8, 0.2, {0.3, 0.3, 0.1})) < 1e-3);
  }
}

TEST_CASE("G** vanishes as the pole approaches the sphere") {
  const KernelContext ctx = make_context(kQuarter);
  const Point3 dir = Point3{0.6, 0.8, 0.0};
  double previous = INFINITY;
  for (double r0 : {0.9, 0.99, 0.999, 0.9999}) {
    const double v = std::abs(kernel_g_star_star(ctx, 0.4, 0.1, r0 * dir));
    CHECK(v < previous);
    previous = v;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("G* equals the weighted normal-derivative limit of G") {
  for (const Parameters p : {kQuarter, kSkew}) {
    const KernelContext ctx = make_context(p);
    Sampler s{std::mt19937_64(36), p.R};
    for (int i = 0; i < 20; ++i) {
      const Point3 m0 = s.interior(0.05, 0.8, 0.9);
      double y, z;
      do {
        y = s.uniform(0.01, 0.95);
        z = s.uniform(-0.95, 0.95);
      } while (y * y + z * z > 0.95);
      CHECK(rel(kernel_g_star(ctx, y, z, m0), g_star_limit(ctx, y, z, m0)) <= 1e-6);
    }
  }
}

TEST_CASE("G* limits in y and x0") {
  const KernelContext ctx = make_context(kSkew);
  const Point3 m0{0.3, 0.4, 0.1};
  const double at_zero = kernel_g_star(ctx, 0.0, 0.2, m0);
  CHECK(std::isfinite(at_zero));
  CHECK(kernel_g_star(ctx, 1e-9, 0.2, m0) == Approx(at_zero).epsilon(1e-7));
  // G* ~ x0^{1-2 alpha} as x0 -> 0.
  const double a = kernel_g_star(ctx, 0.3, 0.2, {1e-4, 0.4, 0.1});
  const double b = kernel_g_star(ctx, 0.3, 0.2, {5e-5, 0.4, 0.1});
  CHECK(std::log2(a / b) == Approx(1.0 - 2.0 * kSkew.alpha).epsilon(1e-3));
}

TEST_CASE("the alternative closed form of G* disagrees with the limit") {
  const KernelContext ctx = make_context(kQuarter);
  const Point3 m0{0.3, 0.4, 0.1};
  const double limit = g_star_limit(ctx, 0.3, 0.2, m0);
  CHECK(image_kernel_exponent(ctx) == Approx(0.0).epsilon(1e-15));
  CHECK(rel(kernel_g_star(ctx, 0.3, 0.2, m0, KernelForm::printed), limit) > 1e-3);
}

TEST_CASE("q, q_image and G are second-order consistent with the operator") {
  for (const Parameters p : {kQuarter, kSkew}) {
    const KernelContext ctx = make_context(p);
    const Point3 pole{0.35, 0.3, 0.1};
    const VolumeField fields[3] = {
        [&](const Point3& m) { return q_fundamental(ctx, m, pole); },
        [&](const Point3& m) { return q_image(ctx, m, pole); },
        [&](const Point3& m) { return g_green(ctx, m, pole); },
    };
    for (const Point3 m : {Point3{0.6, 0.2, 0.3}, Point3{0.2, 0.55, -0.4}, Point3{0.15, 0.15, 0.6}}) {
      for (const VolumeField& u : fields) {
        const double ratio = oracle::fd_residual(p, u, m, 1e-2) / oracle::fd_residual(p, u, m, 5e-3);
        CHECK(ratio == Approx(4.0).epsilon(0.125));
      }
    }
  }
}
