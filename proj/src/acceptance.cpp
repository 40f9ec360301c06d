#include "sdn/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "sdn/config.hpp"
#include "sdn/errors.hpp"
#include "sdn/oracle.hpp"
#include "sdn/richardson.hpp"
#include "sdn/run.hpp"
#include "sdn/solver.hpp"

namespace sdn::acceptance {

namespace {

using Rng = std::mt19937_64;
constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel_diff(double value, double reference) {
  const double d = std::abs(value - reference);
  return reference == 0.0 ? d : d / std::abs(reference);
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

KernelContext context_for(const Options& o, const Parameters& params, SeriesControl ctl = {}) {
  return make_context(params, ctl, o.inversion_sign, o.image_scaling);
}

// Interior point with x, y in [lo, hi] and |m| <= max_radius (all relative to R).
Point3 random_interior(Rng& rng, double R, double lo, double hi, double max_radius) {
  while (true) {
    const Point3 m{R * uniform(rng, lo, hi), R * uniform(rng, lo, hi), R * uniform(rng, -max_radius, max_radius)};
    if (norm(m) <= max_radius * R) return m;
  }
}

F2Params random_f2_params(Rng& rng) {
  return {uniform(rng, 0.1, 2.5), uniform(rng, 0.1, 2.5), uniform(rng, 0.1, 2.5), uniform(rng, 0.1, 2.5),
          uniform(rng, 0.1, 2.5)};
}

// |x| + |y| <= 0.8 with random signs.
std::pair<double, double> random_small_args(Rng& rng, double min_abs) {
  const double r = uniform(rng, 2.0 * min_abs, 0.8);
  const double u = uniform(rng, min_abs / r, 1.0 - min_abs / r);
  const double sx = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  const double sy = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  return {sx * r * u, sy * r * (1.0 - u)};
}

std::pair<double, double> random_quadrant_args(Rng& rng, double min_abs) {
  return {-uniform(rng, min_abs, 5.0), -uniform(rng, min_abs, 5.0)};
}

Outcome f2_decomp(const Options& o) {
  Rng rng(o.seed);
  Stopwatch clock;
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const F2Params p = random_f2_params(rng);
    const auto [x, y] = random_small_args(rng, 0.0);
    const double ref = oracle::f2_bruteforce(p, x, y);
    worst = std::max(worst, rel_diff(appell_f2(p, x, y), ref));
  }
  const double t = clock.seconds();
  Outcome out{"F2-DECOMP", worst <= 1e-10 && t < 10.0, worst, 1e-10, {}};
  out.details.push_back(fmt("200 samples, |x|+|y| <= 0.8, runtime %.2f s (target < 10 s)", t));
  return out;
}

Outcome f2_adjacent(const Options& o) {
  Rng rng(o.seed + 1);
  double worst = 0.0;
  double worst_scaled = 0.0;
  for (int s = 0; s < 100; ++s) {
    const F2Params p = random_f2_params(rng);
    const auto [x, y] = s < 50 ? random_small_args(rng, 0.0) : random_quadrant_args(rng, 0.0);
    const double up = appell_f2({p.a + 1.0, p.b1, p.b2, p.c1, p.c2}, x, y);
    const double fx = appell_f2({p.a + 1.0, p.b1 + 1.0, p.b2, p.c1 + 1.0, p.c2}, x, y);
    const double fy = appell_f2({p.a + 1.0, p.b1, p.b2 + 1.0, p.c1, p.c2 + 1.0}, x, y);
    const double f = appell_f2(p, x, y);
    const double residual = x * p.b1 / p.c1 * fx + y * p.b2 / p.c2 * fy - up + f;
    worst = std::max(worst, std::abs(residual));
    worst_scaled = std::max(worst_scaled, std::abs(residual) / std::max({1.0, std::abs(up), std::abs(f)}));
  }
  Outcome out{"F2-ADJACENT", worst <= 1e-9, worst, 1e-9, {}};
  out.details.push_back(fmt("100 samples (50 with |x|+|y| <= 0.8, 50 in [-5,0)^2); residual / max(1,|F2|) = %.3g",
                            worst_scaled));
  return out;
}

Outcome f2_diff(const Options& o) {
  Rng rng(o.seed + 2);
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const F2Params p = random_f2_params(rng);
    const auto [x, y] = s < 50 ? random_small_args(rng, 0.01) : random_quadrant_args(rng, 0.01);
    const auto [dx, dy] = appell_f2_partials(p, x, y);
    const double fd_x = (appell_f2(p, x + h, y) - appell_f2(p, x - h, y)) / (2.0 * h);
    const double fd_y = (appell_f2(p, x, y + h) - appell_f2(p, x, y - h)) / (2.0 * h);
    worst = std::max({worst, rel_diff(fd_x, dx), rel_diff(fd_y, dy)});
  }
  Outcome out{"F2-DIFF", worst <= 1e-6, worst, 1e-6, {}};
  out.details.push_back("100 samples, central differences with step 1e-5");
  return out;
}

// Exponents of F(1-e) - F(1) = sum_n A_n e^n + e^s sum_n B_n e^n, sorted.
std::vector<double> unit_limit_exponents(double s, std::size_t count) {
  std::vector<double> e;
  for (int n = 0; n < 8; ++n) {
    if (n > 0) e.push_back(n);
    e.push_back(s + n);
  }
  std::sort(e.begin(), e.end());
  e.resize(count);
  return e;
}

Outcome gauss_one(const Options& o) {
  Rng rng(o.seed + 3);
  double worst = 0.0;
  double worst_raw = 0.0;
  for (int s = 0; s < 50; ++s) {
    const double a = uniform(rng, 0.1, 2.0);
    const double b = uniform(rng, 0.1, 2.0);
    const double gap = uniform(rng, 0.1, 2.0);
    const double c = a + b + gap;
    const double at_one = gauss_2f1_at_one(a, b, c);
    std::vector<double> seq;
    for (int k = 4; k <= 16; ++k) seq.push_back(gauss_2f1(a, b, c, 1.0 - std::ldexp(1.0, -k)));
    // The last seven members (k = 10..16) with six eliminations.
    const std::vector<double> tail(seq.end() - 7, seq.end());
    const double limit = richardson(tail, unit_limit_exponents(gap, 6));
    worst = std::max(worst, rel_diff(limit, at_one));
    worst_raw = std::max(worst_raw, rel_diff(seq.back(), at_one));
  }
  Outcome out{"GAUSS-ONE", worst <= 1e-6, worst, 1e-6, {}};
  out.details.push_back("measured: Richardson limit of 2F1(1-2^-k), k = 10..16, against the Gauss summation value");
  out.details.push_back(fmt("raw gap |2F1(1-2^-16) - 2F1(1)| / |2F1(1)| = %.3g (decays only like 2^{-16 s})",
                            worst_raw));
  return out;
}

Outcome k_norm(const Options& o) {
  Rng rng(o.seed + 4);
  Stopwatch clock;
  double worst = 0.0;
  Outcome out{"K-NORM", false, 0.0, 1e-3, {}};
  for (const Parameters params : {Parameters{0.25, 0.25, 1.0}, Parameters{0.1, 0.4, 1.0}}) {
    const KernelContext ctx = context_for(o, params, {1e-12, 2000000});
    for (int s = 0; s < 3; ++s) {
      const Point3 m0 = random_interior(rng, params.R, 0.1, 0.25, 0.5);
      std::vector<double> flux;
      for (double rho : {0.02, 0.01, 0.005}) {
        flux.push_back(oracle::small_sphere_flux(ctx, {m0, rho * params.R, 8, 16}));
      }
      const double limit = richardson(flux, {1.0, 2.0});
      worst = std::max(worst, std::abs(limit - 1.0));
      out.details.push_back(fmt("alpha=%.2f beta=%.2f m0=(%.3f,%.3f,%.3f) flux %.12f %.12f %.12f -> %.12f",
                                params.alpha, params.beta, m0.x, m0.y, m0.z, flux[0], flux[1], flux[2], limit));
    }
  }
  const double t = clock.seconds();
  out.pass = worst <= 1e-3 && t < 60.0;
  out.measured = worst;
  out.details.push_back(fmt("runtime %.1f s (target < 60 s)", t));
  return out;
}

Outcome pde_resid(const Options& o) {
  Rng rng(o.seed + 5);
  const Parameters params = o.params;
  const double R = params.R;
  const KernelContext ctx = context_for(o, params);
  const Point3 pole = random_interior(rng, R, 0.2, 0.5, 0.7);
  const double h = 1e-2 * R;
  const std::array<std::pair<const char*, VolumeField>, 3> fields{{
      {"q", [&](const Point3& m) { return q_fundamental(ctx, m, pole); }},
      {"q_image", [&](const Point3& m) { return q_image(ctx, m, pole); }},
      {"G", [&](const Point3& m) { return g_green(ctx, m, pole); }},
  }};
  double lo = kInf;
  double hi = -kInf;
  for (int s = 0; s < 10; ++s) {
    Point3 m;
    do {
      m = random_interior(rng, R, 0.15, 0.75, 0.9);
    } while (norm(m - pole) < 0.1 * R);
    for (const auto& [name, u] : fields) {
      const double coarse = oracle::fd_residual(params, u, m, h);
      const double fine = oracle::fd_residual(params, u, m, 0.5 * h);
      const double ratio = std::abs(coarse) / std::abs(fine);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  const double measured = std::max(std::abs(lo - 4.0), std::abs(hi - 4.0));
  Outcome out{"PDE-RESID", lo >= 3.5 && hi <= 4.5, measured, 0.5, {}};
  out.details.push_back(fmt("measured = max |res(h)/res(h/2) - 4| over q, q_image, G at 10 points; ratios in [%.4f, %.4f]",
                            lo, hi));
  return out;
}

double image_identity_residual(const Point3& m0, double R, InversionSign sign, Rng& rng) {
  const Image im = invert_point(m0, R, sign);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double theta = uniform(rng, 0.0, std::numbers::pi);
    const double psi = uniform(rng, 0.0, 0.5 * std::numbers::pi);
    const Point3 m{R * std::sin(theta) * std::cos(psi), R * std::sin(theta) * std::sin(psi), R * std::cos(theta)};
    worst = std::max(worst, rel_diff(norm(m - im.image) * im.r0 / R, norm(m - m0)));
  }
  return worst;
}

Outcome g_boundary(const Options& o) {
  Rng rng(o.seed + 6);
  const Parameters params = o.params;
  const double R = params.R;
  const KernelContext ctx = context_for(o, params);
  Outcome out{"G-BOUNDARY", false, kInf, 1e-8, {}};
  double ratio = 0.0;
  double face_x = 0.0;
  double neumann = 0.0;
  double identity = 0.0;
  try {
    for (int s = 0; s < 5; ++s) {
      const Point3 m0 = random_interior(rng, R, 0.1, 0.6, 0.8);
      identity = std::max(identity, image_identity_residual(m0, R, o.inversion_sign, rng));
      double sphere_max = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double theta = uniform(rng, 0.0, std::numbers::pi);
        const double psi = uniform(rng, 0.0, 0.5 * std::numbers::pi);
        const Point3 m{R * std::sin(theta) * std::cos(psi), R * std::sin(theta) * std::sin(psi),
                       R * std::cos(theta)};
        sphere_max = std::max(sphere_max, std::abs(g_green(ctx, m, m0)));
      }
      double interior_max = 0.0;
      for (int i = 0; i < 200; ++i) {
        const Point3 m = random_interior(rng, R, 0.0, 1.0, 1.0);
        if (norm(m - m0) < 0.05 * R) continue;
        interior_max = std::max(interior_max, std::abs(g_green(ctx, m, m0)));
      }
      ratio = std::max(ratio, sphere_max / interior_max);
      for (int i = 0; i < 50; ++i) {
        const double y = R * uniform(rng, 0.0, 0.9);
        const double z = R * uniform(rng, -0.4, 0.4);
        face_x = std::max(face_x, std::abs(g_green(ctx, {0.0, y, z}, m0)));
      }
      const VolumeField g = [&](const Point3& m) { return g_green(ctx, m, m0); };
      for (int i = 0; i < 20; ++i) {
        const double x = R * uniform(rng, 0.05, 0.8);
        const double z = R * uniform(rng, -0.5, 0.5);
        neumann = std::max(neumann, std::abs(weighted_neumann_sample(g, x, z, params.beta, R)));
      }
    }
    out.measured = ratio;
    out.pass = ratio <= 1e-8 && face_x == 0.0 && neumann <= 1e-6;
    out.details.push_back(fmt("max |G| on sphere / max interior |G| = %.3g over 5 poles x 200 sphere points", ratio));
    out.details.push_back(fmt("max |G| at x = 0: %.3g (required exactly 0)", face_x));
    out.details.push_back(fmt("max |lim y^{2b} dG/dy| at y = 0: %.3g (bound 1e-6)", neumann));
  } catch (const std::exception& e) {
    out.details.push_back(std::string("G evaluation failed: ") + e.what());
  }
  out.details.push_back(fmt("image identity residual max | |m - image| R0/R - |m - m0| | / |m - m0| = %.3g", identity));
  return out;
}

Outcome g_symmetry(const Options& o) {
  Rng rng(o.seed + 7);
  const Parameters params = o.params;
  const KernelContext ctx = context_for(o, params);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    Point3 a, b;
    do {
      a = random_interior(rng, params.R, 0.02, 0.95, 0.95);
      b = random_interior(rng, params.R, 0.02, 0.95, 0.95);
    } while (norm(a - b) < 0.05 * params.R);
    const double gab = g_green(ctx, a, b);
    const double gba = g_green(ctx, b, a);
    worst = std::max(worst, std::abs(gab - gba) / (1.0 + std::abs(gab)));
  }
  return {"G-SYMMETRY", worst <= 1e-9, worst, 1e-9, {"measured = max |G(m,m0) - G(m0,m)| / (1 + |G|), 100 pairs"}};
}

Outcome kernel_consistency(const Options& o) {
  Rng rng(o.seed + 8);
  const Parameters params = o.params;
  const double R = params.R;
  const KernelContext ctx = context_for(o, params);
  double star_star = 0.0;
  for (int s = 0; s < 100; ++s) {
    const Point3 m0 = random_interior(rng, R, 0.05, 0.8, 0.9);
    double x, z;
    do {
      x = R * uniform(rng, 0.01, 0.95);
      z = R * uniform(rng, -0.95, 0.95);
    } while (x * x + z * z > 0.95 * R * R);
    star_star = std::max(star_star, rel_diff(kernel_g_star_star(ctx, x, z, m0), g_green(ctx, {x, 0.0, z}, m0)));
  }
  const double derived_exponent = image_kernel_exponent(ctx);
  const double printed_exponent = printed_kernel_exponent(params);
  double star = 0.0;
  double star_printed_exponent = 0.0;
  double star_printed_form = 0.0;
  for (int s = 0; s < 20; ++s) {
    const Point3 m0 = random_interior(rng, R, 0.05, 0.8, 0.9);
    double y, z;
    do {
      y = R * uniform(rng, 0.01, 0.95);
      z = R * uniform(rng, -0.95, 0.95);
    } while (y * y + z * z > 0.95 * R * R);
    const double limit = g_star_limit(ctx, y, z, m0);
    star = std::max(star, rel_diff(kernel_g_star(ctx, y, z, m0), limit));
    star_printed_exponent =
        std::max(star_printed_exponent,
                 rel_diff(detail::kernel_g_star_with_exponent(ctx, y, z, m0, printed_exponent), limit));
    star_printed_form = std::max(star_printed_form, rel_diff(kernel_g_star(ctx, y, z, m0, KernelForm::printed), limit));
  }
  Outcome out{"KERNEL-CONSISTENCY", star <= 1e-6 && star_star <= 1e-10, star, 1e-6, {}};
  out.details.push_back(fmt("measured = max relative |G* closed form - lim x^{2a} dG/dx| over 20 samples"));
  out.details.push_back(fmt("max relative |G** - G(y=0)| = %.3g over 100 samples (bound 1e-10)", star_star));
  out.details.push_back(fmt("image exponent %.4g (derived from the image prefactor): residual %.3g", derived_exponent, star));
  out.details.push_back(fmt("image exponent %.4g (alternative 2-4 alpha): residual %.3g", printed_exponent,
                            star_printed_exponent));
  out.details.push_back(fmt("image exponent supported by the limit: %.4g", star <= star_printed_exponent
                                                                             ? derived_exponent
                                                                             : printed_exponent));
  out.details.push_back(fmt("alternative closed form (KernelForm::printed): residual %.3g", star_printed_form));
  return out;
}

Outcome solve_const(const Options& o) {
  const Parameters params = o.params;
  const KernelContext ctx = context_for(o, params);
  std::vector<Point3> points;
  for (double x : {0.2, 0.35, 0.5}) {
    for (double y : {0.2, 0.35, 0.5}) {
      for (double z : {-0.3, 0.0, 0.3}) points.push_back(params.R * Point3{x, y, z});
    }
  }
  Stopwatch clock;
  const std::vector<GridResult> results = solve_grid(ctx, constant_data(1.0), points, 64);
  const double t = clock.seconds();
  double worst = 0.0;
  Outcome out{"SOLVE-CONST", false, 0.0, 1e-3, {}};
  for (const GridResult& r : results) {
    if (!r.ok) {
      out.details.push_back("solve failed: " + r.error);
      worst = kInf;
      continue;
    }
    worst = std::max(worst, std::abs(r.report.value - 1.0));
  }
  out.measured = worst;
  out.pass = worst <= 1e-3 && t < 120.0;
  out.details.push_back(fmt("3x3x3 grid, resolution 64, runtime %.1f s (target < 120 s)", t));
  return out;
}

// Strictly decreasing until the error reaches `floor`, then staying below it.
bool decreasing_to_floor(const std::vector<double>& errors, double floor) {
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (errors[i] > floor ? !(errors[i + 1] < errors[i]) : errors[i + 1] > floor) return false;
  }
  return true;
}

Outcome solve_manufactured(const Options& o) {
  const Parameters params = o.params;
  const double R = params.R;
  const KernelContext ctx = context_for(o, params);
  const oracle::ManufacturedCase mc = oracle::manufactured_case(ctx, R * Point3{0.5, 0.5, 1.5});
  constexpr double kFloor = 1e-12;
  Outcome out{"SOLVE-MANUFACTURED", true, 0.0, 1e-3, {}};
  for (const Point3 m0 : {R * Point3{0.3, 0.3, 0.0}, R * Point3{0.5, 0.5, 0.5}}) {
    const double exact = mc.exact(m0);
    std::vector<double> errors;
    for (std::size_t n : {16, 32, 64, 128}) {
      errors.push_back(rel_diff(solve_at(ctx, mc.data, m0, n).value, exact));
    }
    const bool monotone = decreasing_to_floor(errors, kFloor);
    out.measured = std::max(out.measured, errors[2]);
    out.pass = out.pass && errors[2] <= 1e-3 && monotone;
    out.details.push_back(fmt("m0=(%.2f,%.2f,%.2f) relative error at 16/32/64/128: %.3g %.3g %.3g %.3g, %s", m0.x,
                              m0.y, m0.z, errors[0], errors[1], errors[2], errors[3],
                              monotone ? "monotone" : "NOT monotone"));
  }
  out.details.push_back(fmt("errors below %.0e count as converged (double-precision floor of the reference)", kFloor));
  out.details.push_back(fmt("rim matching mismatch %.3g", mc.rim_mismatch));
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const Options& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / fmt("sdn_determinism_%llu", static_cast<unsigned long long>(o.seed));
  fs::create_directories(dir);
  Outcome out{"DETERMINISM", false, kInf, 0.0, {}};

  auto config_for = [&](const std::string& command, const fs::path& output) {
    std::ostringstream text;
    text << "alpha=" << fmt("%.17g", o.params.alpha) << "\nbeta=" << fmt("%.17g", o.params.beta)
         << "\nR=" << fmt("%.17g", o.params.R) << "\ncommand=" << command << "\nresolution=16\n"
         << "data=manufactured\npole=" << fmt("%.17g,%.17g,%.17g", 0.5 * o.params.R, 0.5 * o.params.R, 1.5 * o.params.R)
         << "\ngrid_x=" << fmt("%.17g:%.17g:2", 0.2 * o.params.R, 0.4 * o.params.R)
         << "\ngrid_y=" << fmt("%.17g:%.17g:2", 0.2 * o.params.R, 0.4 * o.params.R)
         << "\ngrid_z=" << fmt("%.17g:%.17g:2", -0.2 * o.params.R, 0.2 * o.params.R)
         << "\noutput=" << output.string() << "\n";
    RunConfig c = parse_config(text.str());
    c.inversion_sign = o.inversion_sign;
    c.image_scaling = o.image_scaling;
    return c;
  };

  std::size_t differing = 0;
  std::ostringstream sink;
  bool ran = true;
  for (const std::string command : {"solve", "green"}) {
    const fs::path first = dir / (command + "_1.csv");
    const fs::path second = dir / (command + "_2.csv");
    const int s1 = run(config_for(command, first), sink, sink);
    const int s2 = run(config_for(command, second), sink, sink);
    if (s1 != 0 || s2 != 0 || !fs::exists(first) || !fs::exists(second)) {
      ran = false;
      out.details.push_back("run failed for command " + command);
      continue;
    }
    const std::string a = read_file(first);
    const std::string b = read_file(second);
    std::size_t diff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) diff += a[i] != b[i];
    differing += diff;
    out.details.push_back(fmt("%s: %zu bytes per run, %zu differing", command.c_str(), a.size(), diff));
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (ran) out.measured = static_cast<double>(differing);
  out.pass = ran && differing == 0;
  return out;
}

using Evaluator = Outcome (*)(const Options&);

const std::vector<std::pair<std::string, Evaluator>>& registry() {
  static const std::vector<std::pair<std::string, Evaluator>> r{
      {"F2-DECOMP", f2_decomp},
      {"F2-ADJACENT", f2_adjacent},
      {"F2-DIFF", f2_diff},
      {"GAUSS-ONE", gauss_one},
      {"K-NORM", k_norm},
      {"PDE-RESID", pde_resid},
      {"G-BOUNDARY", g_boundary},
      {"G-SYMMETRY", g_symmetry},
      {"KERNEL-CONSISTENCY", kernel_consistency},
      {"SOLVE-CONST", solve_const},
      {"SOLVE-MANUFACTURED", solve_manufactured},
      {"DETERMINISM", determinism},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& entry : registry()) v.push_back(entry.first);
    return v;
  }();
  return ids;
}

Outcome evaluate(const std::string& id, const Options& options) {
  for (const auto& [name, fn] : registry()) {
    if (name != id) continue;
    try {
      return fn(options);
    } catch (const std::exception& e) {
      return {id, false, kInf, 0.0, {std::string("evaluation error: ") + e.what()}};
    }
  }
  throw DomainError("unknown acceptance criterion '" + id + "'");
}

std::string format_line(const Outcome& o) {
  return fmt("%s %s measured=%.6g bound=%.6g", o.id.c_str(), o.pass ? "PASS" : "FAIL", o.measured, o.bound);
}

bool run_suite(const std::vector<std::string>& ids, const Options& options, std::ostream& out) {
  const std::vector<std::string>& chosen = ids.empty() ? criterion_ids() : ids;
  bool all = true;
  for (const std::string& id : chosen) {
    const Outcome o = evaluate(id, options);
    out << format_line(o) << '\n';
    for (const std::string& d : o.details) out << "#   " << d << '\n';
    out.flush();
    all = all && o.pass;
  }
  return all;
}

}  // namespace sdn::acceptance
