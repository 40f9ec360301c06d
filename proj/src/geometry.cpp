#include "sdn/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdn/errors.hpp"
#include "sdn/specfun.hpp"

namespace sdn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMembershipTol = 1e-12;

double beta_function(double p, double q) {
  return std::exp(ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q));
}

// (sin(pi (1 - s) / 2) / (1 - s^2))^e on (-1, 1): the smooth part left over
// once (1 - s^2)^e has been absorbed by a symmetric Jacobi weight.
double cosine_remainder(double s, double e) {
  const double c = std::cos(0.5 * kPi * s);
  return std::pow(c / ((1.0 - s) * (1.0 + s)), e);
}

// Polar rule on a half disc {rho < R, t in (-pi/2, pi/2)} for the weight
// (rho cos t)^{2e} rho, with nodes (rho cos t, rho sin t) in the face plane.
struct PolarNode {
  double radial;   // rho cos t
  double axial;    // rho sin t
  double weight;
};

std::vector<PolarNode> half_disc_rule(double e, double R, std::size_t n) {
  const GaussRule radial = gauss_jacobi(n, 0.0, 2.0 * e + 1.0);
  const GaussRule angular = gauss_jacobi(n, 2.0 * e, 2.0 * e);
  const double radial_scale = std::pow(0.5 * R, 2.0 * e + 2.0);
  std::vector<PolarNode> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = 0.5 * R * (1.0 + radial.nodes[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double s = angular.nodes[j];
      const double t = 0.5 * kPi * s;
      const double w = radial.weights[i] * radial_scale * angular.weights[j] * 0.5 * kPi *
                       cosine_remainder(s, 2.0 * e);
      out.push_back({rho * std::cos(t), rho * std::sin(t), w});
    }
  }
  return out;
}

}  // namespace

void validate(const Parameters& params) {
  if (!(params.alpha > 0.0 && 2.0 * params.alpha < 1.0)) {
    throw DomainError("Parameters: requires 0 < 2 alpha < 1");
  }
  if (!(params.beta > 0.0 && 2.0 * params.beta < 1.0)) {
    throw DomainError("Parameters: requires 0 < 2 beta < 1");
  }
  if (!(params.R > 0.0) || !std::isfinite(params.R)) throw DomainError("Parameters: requires R > 0");
}

double norm(const Point3& a) { return std::sqrt(norm2(a)); }

Image invert_point(const Point3& m0, double R, InversionSign sign) {
  const double r0_sq = norm2(m0);
  if (r0_sq == 0.0) throw DomainError("invert_point: origin maps to infinity");
  const double factor = (sign == InversionSign::kelvin ? 1.0 : -1.0) * R * R / r0_sq;
  return {factor * m0, std::sqrt(r0_sq)};
}

DistanceBundle distance_bundle(const Point3& m, const Point3& m0) {
  const double dx = m.x - m0.x;
  const double dy = m.y - m0.y;
  const double dz = m.z - m0.z;
  const double sx = m.x + m0.x;
  const double sy = m.y + m0.y;
  DistanceBundle b;
  b.r2 = dx * dx + dy * dy + dz * dz;
  if (b.r2 == 0.0) throw SingularPointError("distance_bundle: points coincide");
  b.r1_2 = sx * sx + dy * dy + dz * dz;
  b.r2_2 = dx * dx + sy * sy + dz * dz;
  b.xi = 1.0 - b.r1_2 / b.r2;
  b.eta = 1.0 - b.r2_2 / b.r2;
  return b;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::FaceOmega1: return "omega1";
    case Membership::FaceOmega2: return "omega2";
    case Membership::SphereFace: return "sphere";
    case Membership::Edge: return "edge";
    case Membership::Outside: return "outside";
  }
  return "unknown";
}

Membership domain_membership(const Point3& m, double R) {
  const double tol = kMembershipTol * R;
  const double radius = norm(m);
  if (m.x < -tol || m.y < -tol || radius > R + tol) return Membership::Outside;
  const bool on_x = std::abs(m.x) <= tol;
  const bool on_y = std::abs(m.y) <= tol;
  const bool on_s = std::abs(radius - R) <= tol;
  const int hits = int(on_x) + int(on_y) + int(on_s);
  if (hits >= 2) return Membership::Edge;
  if (on_x) return Membership::FaceOmega1;
  if (on_y) return Membership::FaceOmega2;
  if (on_s) return Membership::SphereFace;
  return Membership::Interior;
}

double distance_to_boundary(const Point3& m, double R) {
  return std::min({m.x, m.y, R - norm(m)});
}

std::string_view to_string(Face f) {
  switch (f) {
    case Face::Omega1: return "omega1";
    case Face::Omega2: return "omega2";
    case Face::Sphere: return "sphere";
  }
  return "unknown";
}

GaussRule gauss_jacobi(std::size_t n, double a, double b) {
  if (n == 0) throw DomainError("gauss_jacobi: need at least one node");
  if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

  // Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  const double ab = a + b;
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    if (k == 0) {
      diag(0) = (b - a) / (ab + 2.0);
    } else {
      diag(k) = (b * b - a * a) / ((2.0 * kk + ab) * (2.0 * kk + ab + 2.0));
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double num = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab);
    double den = s * s * (s + 1.0) * (s - 1.0);
    if (k == 1) {
      // (s - 1) = 1 + a + b can vanish only together with the factor (k + a + b).
      num = 4.0 * (1.0 + a) * (1.0 + b);
      den = (2.0 + ab) * (2.0 + ab) * (3.0 + ab);
    }
    off(k - 1) = std::sqrt(num / den);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw DomainError("gauss_jacobi: eigen solver failed");

  const double mu0 = std::pow(2.0, ab + 1.0) *
                     std::exp(ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(ab + 2.0));
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    rule.nodes[k] = solver.eigenvalues()(idx);
    const double v0 = solver.eigenvectors()(0, idx);
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

FaceQuadrature face_quadrature(Face face, const Parameters& params, std::size_t resolution) {
  validate(params);
  if (resolution < 2) throw DomainError("face_quadrature: resolution must be at least 2");
  FaceQuadrature q;
  q.face = face;
  q.resolution = resolution;
  const double R = params.R;
  const std::size_t n = resolution;

  switch (face) {
    case Face::Omega1: {
      for (const PolarNode& pn : half_disc_rule(params.beta, R, n)) {
        q.nodes.push_back({0.0, pn.radial, pn.axial});
        q.weights.push_back(pn.weight);
      }
      break;
    }
    case Face::Omega2: {
      for (const PolarNode& pn : half_disc_rule(params.alpha, R, n)) {
        q.nodes.push_back({pn.radial, 0.0, pn.axial});
        q.weights.push_back(pn.weight);
      }
      break;
    }
    case Face::Sphere: {
      // x = R sin(th) cos(ps), y = R sin(th) sin(ps), z = R cos(th);
      // weight R^{p+1} sin^p(th) cos^{2a}(ps) sin^{2b}(ps), p = 2a + 2b + 1.
      const double ea = 2.0 * params.alpha;
      const double eb = 2.0 * params.beta;
      const double p = ea + eb + 1.0;
      const GaussRule polar = gauss_jacobi(n, p, p);
      const GaussRule azimuth = gauss_jacobi(n, ea, eb);
      const double scale = std::pow(R, p + 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double s = polar.nodes[i];
        const double theta = 0.5 * kPi * (1.0 + s);
        const double w_theta = polar.weights[i] * 0.5 * kPi * cosine_remainder(s, p);
        for (std::size_t j = 0; j < n; ++j) {
          const double t = azimuth.nodes[j];
          const double psi = 0.25 * kPi * (1.0 + t);
          // cos(psi) = sin(pi (1 - t) / 4), sin(psi) = sin(pi (1 + t) / 4)
          const double rest = std::pow(std::sin(0.25 * kPi * (1.0 - t)) / (1.0 - t), ea) *
                              std::pow(std::sin(0.25 * kPi * (1.0 + t)) / (1.0 + t), eb);
          const double w_psi = azimuth.weights[j] * 0.25 * kPi * rest;
          q.nodes.push_back({R * std::sin(theta) * std::cos(psi), R * std::sin(theta) * std::sin(psi),
                             R * std::cos(theta)});
          q.weights.push_back(scale * w_theta * w_psi);
        }
      }
      break;
    }
    default:
      throw DomainError("face_quadrature: unknown face");
  }
  return q;
}

double weighted_face_measure(Face face, const Parameters& params) {
  validate(params);
  const double R = params.R;
  switch (face) {
    case Face::Omega1:
      return std::pow(R, 2.0 * params.beta + 2.0) / (2.0 * params.beta + 2.0) *
             beta_function(0.5, params.beta + 0.5);
    case Face::Omega2:
      return std::pow(R, 2.0 * params.alpha + 2.0) / (2.0 * params.alpha + 2.0) *
             beta_function(0.5, params.alpha + 0.5);
    case Face::Sphere: {
      const double p = 2.0 * params.alpha + 2.0 * params.beta + 1.0;
      return std::pow(R, p + 1.0) * beta_function(0.5, 0.5 * (p + 1.0)) * 0.5 *
             beta_function(params.alpha + 0.5, params.beta + 0.5);
    }
  }
  throw DomainError("weighted_face_measure: unknown face");
}

}  // namespace sdn
