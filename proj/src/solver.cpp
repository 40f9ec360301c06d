#include "sdn/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numbers>
#include <thread>

#include "sdn/errors.hpp"
#include "sdn/richardson.hpp"

namespace sdn {

namespace {

// Data sampled at the nodes of one quadrature set.
struct SampledFaces {
  std::array<FaceQuadrature, 3> rules;
  std::array<std::vector<double>, 3> data;
};

SampledFaces sample_faces(const Parameters& params, const BoundaryData& data, std::size_t resolution) {
  SampledFaces s;
  s.rules = {face_quadrature(Face::Omega1, params, resolution),
             face_quadrature(Face::Omega2, params, resolution),
             face_quadrature(Face::Sphere, params, resolution)};
  for (const Point3& n : s.rules[0].nodes) s.data[0].push_back(data.tau1(n.y, n.z));
  for (const Point3& n : s.rules[1].nodes) s.data[1].push_back(data.nu2(n.x, n.z));
  for (const Point3& n : s.rules[2].nodes) s.data[2].push_back(data.phi(n));
  return s;
}

std::string node_label(Face face, std::size_t index, const Point3& n) {
  char buf[160];
  std::snprintf(buf, sizeof buf, " [face %s node %zu at (%.17g, %.17g, %.17g)]",
                std::string(to_string(face)).c_str(), index, n.x, n.y, n.z);
  return buf;
}

double kernel_at(const KernelContext& ctx, Face face, const Point3& n, const Point3& m0) {
  switch (face) {
    case Face::Omega1: return kernel_g_star(ctx, n.y, n.z, m0);
    case Face::Omega2: return kernel_g_star_star(ctx, n.x, n.z, m0);
    case Face::Sphere: return dG_dn_sphere(ctx, n, m0);
  }
  throw DomainError("unknown face");
}

struct Sums {
  std::array<double, 3> faces{};
  std::size_t evals = 0;
};

Sums integrate(const KernelContext& ctx, const SampledFaces& s, const Point3& m0) {
  constexpr std::array<double, 3> kSigns{kSignOmega1, kSignOmega2, kSignSphere};
  Sums out;
  for (std::size_t f = 0; f < 3; ++f) {
    const FaceQuadrature& rule = s.rules[f];
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double datum = s.data[f][j];
      if (datum == 0.0) continue;
      double kernel = 0.0;
      try {
        kernel = kernel_at(ctx, rule.face, rule.nodes[j], m0);
      } catch (const SingularPointError& e) {
        throw SingularPointError(e.what() + node_label(rule.face, j, rule.nodes[j]));
      } catch (const DomainError& e) {
        throw DomainError(e.what() + node_label(rule.face, j, rule.nodes[j]));
      } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what() + node_label(rule.face, j, rule.nodes[j]), e.partial_sum(),
                               e.terms());
      }
      ++out.evals;
      sum += rule.weights[j] * datum * kernel;
    }
    out.faces[f] = kSigns[f] * sum;
  }
  return out;
}

void require_solve_point(const Point3& m0, double R) {
  if (domain_membership(m0, R) != Membership::Interior) {
    throw DomainError("solve_at: point is not interior");
  }
  if (distance_to_boundary(m0, R) < kFaceClearance * R) {
    throw DomainError("solve_at: point lies within 1e-3 R of a face");
  }
}

void require_resolution(std::size_t resolution) {
  if (resolution < 8) throw DomainError("solve_at: resolution must be at least 8");
}

SolveReport assemble(const KernelContext& ctx, const SampledFaces& fine, const SampledFaces& coarse,
                     const Point3& m0) {
  require_solve_point(m0, ctx.params.R);
  const Sums hi = integrate(ctx, fine, m0);
  const Sums lo = integrate(ctx, coarse, m0);
  SolveReport r;
  r.face_contributions = hi.faces;
  r.value = hi.faces[0] + hi.faces[1] + hi.faces[2];
  r.est_error = std::abs(r.value - (lo.faces[0] + lo.faces[1] + lo.faces[2]));
  r.kernel_evals = hi.evals + lo.evals;
  return r;
}

std::size_t index_below(const std::vector<double>& axis, double t) {
  const auto it = std::upper_bound(axis.begin(), axis.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - axis.begin());
  return std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, axis.size() - 2);
}

void validate_grid(const FaceGrid& g, const char* name) {
  if (g.u_axis.size() < 2 || g.v_axis.size() < 2) {
    throw DomainError(std::string("grid data ") + name + ": each axis needs at least 2 points");
  }
  if (g.values.size() != g.u_axis.size() * g.v_axis.size()) {
    throw DomainError(std::string("grid data ") + name + ": value count does not match the axes");
  }
  if (!std::is_sorted(g.u_axis.begin(), g.u_axis.end()) ||
      !std::is_sorted(g.v_axis.begin(), g.v_axis.end())) {
    throw DomainError(std::string("grid data ") + name + ": axes must be increasing");
  }
}

}  // namespace

BoundaryData constant_data(double value) {
  return {[value](double, double) { return value; }, [](double, double) { return 0.0; },
          [value](const Point3&) { return value; }};
}

BoundaryData scaled(const BoundaryData& data, double factor) {
  return {[data, factor](double a, double b) { return factor * data.tau1(a, b); },
          [data, factor](double a, double b) { return factor * data.nu2(a, b); },
          [data, factor](const Point3& m) { return factor * data.phi(m); }};
}

double matching_mismatch(const BoundaryData& data, double R, std::size_t samples) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = std::numbers::pi * ((static_cast<double>(i) + 0.5) / samples - 0.5);
    const double y = R * std::cos(t);
    const double z = R * std::sin(t);
    worst = std::max(worst, std::abs(data.tau1(y, z) - data.phi({0.0, y, z})));
  }
  return worst;
}

SolveReport solve_at(const KernelContext& ctx, const BoundaryData& data, const Point3& m0,
                     std::size_t resolution) {
  require_resolution(resolution);
  require_solve_point(m0, ctx.params.R);
  const SampledFaces fine = sample_faces(ctx.params, data, resolution);
  const SampledFaces coarse = sample_faces(ctx.params, data, resolution / 2);
  return assemble(ctx, fine, coarse, m0);
}

std::vector<GridResult> solve_grid(const KernelContext& ctx, const BoundaryData& data,
                                   const std::vector<Point3>& points, std::size_t resolution,
                                   std::size_t threads) {
  require_resolution(resolution);
  const SampledFaces fine = sample_faces(ctx.params, data, resolution);
  const SampledFaces coarse = sample_faces(ctx.params, data, resolution / 2);

  std::vector<GridResult> results(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i].report = assemble(ctx, fine, coarse, points[i]);
        results[i].ok = true;
      } catch (const std::exception& e) {
        results[i].error = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(points.size(), 1));
  if (threads <= 1) {
    worker();
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return results;
}

double weighted_neumann_sample(const VolumeField& u, double x, double z, double beta, double R) {
  std::vector<double> values;
  for (double level : {1e-3, 5e-4, 2.5e-4}) {
    const double y = level * R;
    const double h = 1e-3 * y;
    // Fourth-order central difference.
    const double du = (u({x, y - 2.0 * h, z}) - 8.0 * u({x, y - h, z}) + 8.0 * u({x, y + h, z}) -
                       u({x, y + 2.0 * h, z})) /
                      (12.0 * h);
    values.push_back(std::pow(y, 2.0 * beta) * du);
  }
  const double d1 = values[1] - values[0];
  const double d2 = values[2] - values[1];
  const double scale = 1.0 + std::max({std::abs(values[0]), std::abs(values[1]), std::abs(values[2])});
  if (!std::isfinite(d1) || !std::isfinite(d2) ||
      (std::abs(d2) > std::abs(d1) && std::abs(d2) > 1e-10 * scale)) {
    throw ExtractionError("weighted_neumann_sample: estimates do not settle as y -> 0");
  }
  // u = A(y) + y^{1-2b} B(y) with A, B smooth gives corrections y^{1+2b} and y^2.
  return richardson(values, {1.0 + 2.0 * beta, 2.0});
}

double bilinear(const FaceGrid& g, double u, double v) {
  const std::size_t i = index_below(g.u_axis, u);
  const std::size_t j = index_below(g.v_axis, v);
  const double tu = std::clamp((u - g.u_axis[i]) / (g.u_axis[i + 1] - g.u_axis[i]), 0.0, 1.0);
  const double tv = std::clamp((v - g.v_axis[j]) / (g.v_axis[j + 1] - g.v_axis[j]), 0.0, 1.0);
  const std::size_t nv = g.v_axis.size();
  const double f00 = g.values[i * nv + j];
  const double f01 = g.values[i * nv + j + 1];
  const double f10 = g.values[(i + 1) * nv + j];
  const double f11 = g.values[(i + 1) * nv + j + 1];
  return (1.0 - tu) * ((1.0 - tv) * f00 + tv * f01) + tu * ((1.0 - tv) * f10 + tv * f11);
}

BoundaryData grid_data(FaceGrid tau1, FaceGrid nu2, FaceGrid phi) {
  validate_grid(tau1, "tau1");
  validate_grid(nu2, "nu2");
  validate_grid(phi, "phi");
  auto t = std::make_shared<const FaceGrid>(std::move(tau1));
  auto n = std::make_shared<const FaceGrid>(std::move(nu2));
  auto p = std::make_shared<const FaceGrid>(std::move(phi));
  return {[t](double y, double z) { return bilinear(*t, y, z); },
          [n](double x, double z) { return bilinear(*n, x, z); },
          [p](const Point3& m) {
            const double r = norm(m);
            const double theta = std::acos(std::clamp(m.z / r, -1.0, 1.0));
            const double psi = std::atan2(m.y, m.x);
            return bilinear(*p, theta, psi);
          }};
}

}  // namespace sdn
