#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sdn/errors.hpp"
#include "sdn/geometry.hpp"

using namespace sdn;
using doctest::Approx;

namespace {

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double integrate(const FaceQuadrature& q, double (*f)(const Point3&)) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

double one(const Point3&) { return 1.0; }

// Independent closed forms of the weighted face measures.
double omega1_measure(double beta, double R) {
  return std::pow(R, 2 * beta + 2) / (2 * beta + 2) * std::sqrt(std::numbers::pi) * std::tgamma(beta + 0.5) /
         std::tgamma(beta + 1);
}

double sphere_measure(double alpha, double beta, double R) {
  return std::pow(R, 2 + 2 * alpha + 2 * beta) * beta_fn(1 + alpha + beta, 0.5) * 0.5 *
         beta_fn(alpha + 0.5, beta + 0.5);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(Parameters{0.25, 0.25, 1.0}));
  CHECK_THROWS_AS(validate(Parameters{0.5, 0.25, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(Parameters{0.25, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(Parameters{0.25, 0.25, -1.0}), DomainError);
}

TEST_CASE("invert_point examples") {
  const Image a = invert_point({0, 0, 0.5}, 1.0);
  CHECK(a.image == Point3{0, 0, 2});
  CHECK(a.r0 == Approx(0.5));
  const Point3 on{0.6, 0.0, 0.8};
  const Image b = invert_point(on, 1.0);
  CHECK(b.image.x == Approx(0.6));
  CHECK(b.image.z == Approx(0.8));
  const Image c = invert_point({0.3, 0.4, 0.0}, 1.0);
  CHECK(c.image.x == Approx(1.2));
  CHECK(c.image.y == Approx(1.6));
  CHECK(c.r0 == Approx(0.5));
  CHECK_THROWS_AS(invert_point({0, 0, 0}, 1.0), DomainError);
}

TEST_CASE("inversion is an involution and satisfies the image identity") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double R = 1.7;
  for (int i = 0; i < 200; ++i) {
    const Point3 m0{R * std::abs(u(rng)) * 0.55, R * std::abs(u(rng)) * 0.55, R * u(rng) * 0.55};
    const Image im = invert_point(m0, R);
    const Point3 back = invert_point(im.image, R).image;
    CHECK(norm(back - m0) <= 1e-13 * norm(m0));
    const double theta = std::acos(u(rng)), psi = std::abs(u(rng)) * std::numbers::pi / 2;
    const Point3 m{R * std::sin(theta) * std::cos(psi), R * std::sin(theta) * std::sin(psi), R * std::cos(theta)};
    CHECK(rel(norm(m - im.image) * im.r0 / R, norm(m - m0)) <= 1e-12);
  }
}

TEST_CASE("the negated image does not fix the sphere") {
  const Point3 m0{0.3, 0.2, 0.1};
  const Image im = invert_point(m0, 1.0, InversionSign::paper);
  const Point3 m{0.6, 0.0, 0.8};
  CHECK(rel(norm(m - im.image) * im.r0, norm(m - m0)) > 0.1);
}

TEST_CASE("distance_bundle examples and symmetry") {
  const DistanceBundle d = distance_bundle({1, 1, 0}, {1, 1, 1});
  CHECK(d.r2 == Approx(1.0));
  CHECK(d.r1_2 == Approx(5.0));
  CHECK(d.r2_2 == Approx(5.0));
  CHECK(d.xi == Approx(-4.0));
  CHECK(d.eta == Approx(-4.0));
  const DistanceBundle dx = distance_bundle({0.2, 0.3, 0.1}, {0.0, 0.5, 0.4});
  CHECK(dx.r1_2 == dx.r2);
  CHECK(dx.xi == 0.0);
  const DistanceBundle dy = distance_bundle({0.2, 0.3, 0.1}, {0.4, 0.0, 0.4});
  CHECK(dy.r2_2 == dy.r2);
  CHECK(dy.eta == 0.0);
  const DistanceBundle s1 = distance_bundle({0.2, 0.3, 0.1}, {0.5, 0.1, -0.2});
  const DistanceBundle s2 = distance_bundle({0.5, 0.1, -0.2}, {0.2, 0.3, 0.1});
  CHECK(s1.r2 == Approx(s2.r2));
  CHECK(s1.r1_2 == Approx(s2.r1_2));
  CHECK(s1.r2_2 == Approx(s2.r2_2));
  CHECK_THROWS_AS(distance_bundle({0.1, 0.1, 0.1}, {0.1, 0.1, 0.1}), SingularPointError);
}

TEST_CASE("domain_membership examples") {
  const double R = 1.0;
  CHECK(domain_membership({0.5, 0.5, 0.0}, R) == Membership::Interior);
  CHECK(domain_membership({0.0, 0.5, 0.0}, R) == Membership::FaceOmega1);
  CHECK(domain_membership({0.5, 0.0, 0.0}, R) == Membership::FaceOmega2);
  CHECK(domain_membership({0.6, 0.0, 0.8}, R) == Membership::Edge);
  CHECK(domain_membership({0.6, 0.48, 0.64}, R) == Membership::SphereFace);
  CHECK(domain_membership({0.0, 0.0, 0.5}, R) == Membership::Edge);
  CHECK(domain_membership({-0.1, 0.5, 0.0}, R) == Membership::Outside);
  CHECK(domain_membership({0.8, 0.8, 0.0}, R) == Membership::Outside);
  CHECK(distance_to_boundary({0.2, 0.3, 0.0}, R) == Approx(0.2));
}

TEST_CASE("face quadrature reproduces closed-form weighted measures") {
  for (const Parameters p : {Parameters{0.25, 0.25, 1.0}, Parameters{0.1, 0.4, 1.3}}) {
    const double o1 = omega1_measure(p.beta, p.R);
    const double o2 = omega1_measure(p.alpha, p.R);
    const double s = sphere_measure(p.alpha, p.beta, p.R);
    CHECK(rel(weighted_face_measure(Face::Omega1, p), o1) <= 1e-13);
    CHECK(rel(weighted_face_measure(Face::Omega2, p), o2) <= 1e-13);
    CHECK(rel(weighted_face_measure(Face::Sphere, p), s) <= 1e-13);
    for (const auto& [face, exact] : {std::pair{Face::Omega1, o1}, {Face::Omega2, o2}, {Face::Sphere, s}}) {
      double previous = INFINITY;
      for (std::size_t n : {4, 8, 16, 32, 64}) {
        const double e = rel(integrate(face_quadrature(face, p, n), one), exact);
        CHECK((e < previous || e < 1e-14));
        previous = e;
      }
      CHECK(previous <= 1e-8);
    }
  }
}

TEST_CASE("Omega2 mirrors Omega1 under alpha <-> beta") {
  const Parameters p{0.15, 0.35, 1.0}, q{0.35, 0.15, 1.0};
  CHECK(weighted_face_measure(Face::Omega2, p) == Approx(weighted_face_measure(Face::Omega1, q)).epsilon(1e-14));
}

TEST_CASE("face nodes lie on their faces") {
  const Parameters p{0.25, 0.25, 1.0};
  for (const Point3& m : face_quadrature(Face::Omega1, p, 8).nodes) {
    CHECK(m.x == 0.0);
    CHECK(m.y > 0.0);
    CHECK(norm(m) < 1.0);
  }
  for (const Point3& m : face_quadrature(Face::Omega2, p, 8).nodes) CHECK(m.y == 0.0);
  for (const Point3& m : face_quadrature(Face::Sphere, p, 8).nodes) {
    CHECK(norm(m) == Approx(1.0).epsilon(1e-14));
    CHECK(m.x > 0.0);
    CHECK(m.y > 0.0);
  }
  CHECK_THROWS_AS(face_quadrature(Face::Sphere, p, 1), DomainError);
}

TEST_CASE("gauss_jacobi integrates polynomials exactly") {
  const GaussRule g = gauss_jacobi(6, 0.5, -0.3);
  // Exact: int (1-s)^a (1+s)^b s^2 ds via Beta functions on t = (1+s)/2.
  const double a = 0.5, b = -0.3;
  const double m0 = std::pow(2.0, a + b + 1) * beta_fn(a + 1, b + 1);
  double s0 = 0, s1 = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    s0 += g.weights[i];
    s1 += g.weights[i] * g.nodes[i];
  }
  CHECK(s0 == Approx(m0).epsilon(1e-13));
  // Mean of s under the Jacobi weight is (b - a) / (a + b + 2).
  CHECK(s1 / s0 == Approx((b - a) / (a + b + 2)).epsilon(1e-13));
  const GaussRule leg = gauss_jacobi(5, 0.0, 0.0);
  double s4 = 0;
  for (std::size_t i = 0; i < 5; ++i) s4 += leg.weights[i] * std::pow(leg.nodes[i], 8);
  CHECK(s4 == Approx(2.0 / 9.0).epsilon(1e-14));
}
