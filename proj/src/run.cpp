#include "sdn/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sdn/acceptance.hpp"
#include "sdn/errors.hpp"
#include "sdn/oracle.hpp"

namespace sdn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void put(std::string& row, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  if (!row.empty()) row += ',';
  row += buf;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  for (double v : values) put(row, v);
  return row + '\n';
}

// Writes the whole document at once so a failure never leaves a partial file.
void emit(const RunConfig& config, const std::string& csv, std::ostream& out) {
  if (config.output.empty()) {
    out << csv;
    return;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  file << csv;
  file.close();
  if (!file) {
    std::error_code ec;
    std::filesystem::remove(config.output, ec);
    throw std::runtime_error("cannot write " + config.output);
  }
}

std::string point_label(const Point3& m) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", m.x, m.y, m.z);
  return buf;
}

KernelContext context_of(const RunConfig& c) {
  return make_context(c.params, c.ctl, c.inversion_sign, c.image_scaling);
}

std::vector<double> need(const std::vector<double>& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw DomainError(std::string(what) + ": expected " + std::to_string(n) + " values, got " +
                      std::to_string(v.size()));
  }
  return v;
}

int run_specfun(const RunConfig& c, std::ostream& out) {
  const std::string& f = c.function;
  const std::vector<double>& p = c.function_params;
  const std::vector<double>& args = c.function_args;
  std::string csv;
  auto pairs = [&](auto&& body) {
    if (args.empty() || args.size() % 2 != 0) throw DomainError(f + ": args must hold x,y pairs");
    for (std::size_t i = 0; i < args.size(); i += 2) body(args[i], args[i + 1]);
  };
  auto singles = [&](auto&& body) {
    if (args.empty()) throw DomainError(f + ": args must not be empty");
    for (double x : args) body(x);
  };
  if (f == "f2" || f == "f2_direct" || f == "f2_partials") {
    need(p, 5, "params a,b1,b2,c1,c2");
    const F2Params fp{p[0], p[1], p[2], p[3], p[4]};
    if (f == "f2_partials") {
      csv = "x,y,dF_dx,dF_dy\n";
      pairs([&](double x, double y) {
        const auto [dx, dy] = appell_f2_partials(fp, x, y, c.ctl);
        csv += csv_row({x, y, dx, dy});
      });
    } else {
      csv = "x,y,value\n";
      pairs([&](double x, double y) {
        const double v = f == "f2" ? appell_f2(fp, x, y, c.ctl) : appell_f2_direct(fp, x, y, c.ctl);
        csv += csv_row({x, y, v});
      });
    }
  } else if (f == "2f1") {
    need(p, 3, "params a,b,c");
    csv = "x,value\n";
    singles([&](double x) { csv += csv_row({x, gauss_2f1(p[0], p[1], p[2], x, c.ctl)}); });
  } else if (f == "2f1_at_one") {
    need(p, 3, "params a,b,c");
    csv = "value\n" + csv_row({gauss_2f1_at_one(p[0], p[1], p[2])});
  } else if (f == "gamma") {
    csv = "x,ln_gamma\n";
    singles([&](double x) { csv += csv_row({x, ln_gamma(x)}); });
  } else if (f == "pochhammer") {
    need(p, 1, "params a");
    csv = "n,value\n";
    singles([&](double n) {
      if (n < 0 || n != std::floor(n)) throw DomainError("pochhammer: args must be non-negative integers");
      csv += csv_row({n, pochhammer(p[0], static_cast<std::size_t>(n))});
    });
  } else {
    throw DomainError("unknown function '" + f + "' (f2, f2_direct, f2_partials, 2f1, 2f1_at_one, gamma, pochhammer)");
  }
  emit(c, csv, out);
  return 0;
}

int run_green(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const KernelContext ctx = context_of(c);
  const double R = c.params.R;
  if (domain_membership(c.m0, R) != Membership::Interior) {
    throw DomainError("green: m0 " + point_label(c.m0) + " is not interior");
  }
  std::string csv = "x,y,z,G,dG_dn,G_star,G_star_star\n";
  for (const Point3& m : c.grid.points(R)) {
    const Membership where = domain_membership(m, R);
    if (where == Membership::Outside || m == c.m0) {
      err << "warning: skipping " << point_label(m) << " (" << (m == c.m0 ? "pole" : to_string(where))
          << ")\n";
      csv += csv_row({m.x, m.y, m.z, kNaN, kNaN, kNaN, kNaN});
      continue;
    }
    const double g = g_green(ctx, m, c.m0);
    const double dn = where == Membership::SphereFace ? dG_dn_sphere(ctx, m, c.m0) : kNaN;
    const double star = where == Membership::FaceOmega1 ? kernel_g_star(ctx, m.y, m.z, c.m0) : kNaN;
    const double star_star = where == Membership::FaceOmega2 ? kernel_g_star_star(ctx, m.x, m.z, c.m0) : kNaN;
    csv += csv_row({m.x, m.y, m.z, g, dn, star, star_star});
  }
  emit(c, csv, out);
  return 0;
}

BoundaryData data_of(const RunConfig& c, const KernelContext& ctx) {
  switch (c.data) {
    case DataKind::constant:
      return constant_data(c.constant_value);
    case DataKind::manufactured:
      return oracle::manufactured_case(ctx, c.pole).data;
    case DataKind::file:
      return load_grid_data(c.data_file);
  }
  throw DomainError("unknown data kind");
}

int run_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const KernelContext ctx = context_of(c);
  const double R = c.params.R;
  const BoundaryData data = data_of(c, ctx);

  const std::vector<Point3> grid = c.grid.points(R);
  std::vector<Point3> accepted;
  std::vector<bool> usable;
  for (const Point3& m : grid) {
    const bool ok = domain_membership(m, R) == Membership::Interior &&
                    distance_to_boundary(m, R) >= kFaceClearance * R;
    usable.push_back(ok);
    if (ok) {
      accepted.push_back(m);
    } else {
      err << "warning: skipping " << point_label(m) << " (not interior or too close to a face)\n";
    }
  }
  const std::vector<GridResult> results = solve_grid(ctx, data, accepted, c.resolution, c.threads);

  std::string csv = "x,y,z,u,est_error,face1,face2,faceS\n";
  bool failed = false;
  std::size_t next = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point3& m = grid[i];
    if (!usable[i]) {
      csv += csv_row({m.x, m.y, m.z, kNaN, kNaN, kNaN, kNaN, kNaN});
      continue;
    }
    const GridResult& r = results[next++];
    if (!r.ok) {
      err << "error at " << point_label(m) << ": " << r.error << '\n';
      failed = true;
      continue;
    }
    const SolveReport& s = r.report;
    csv += csv_row({m.x, m.y, m.z, s.value, s.est_error, s.face_contributions[0], s.face_contributions[1],
                    s.face_contributions[2]});
  }
  if (failed) {
    if (!c.output.empty()) {
      std::error_code ec;
      std::filesystem::remove(c.output, ec);
    }
    return 1;
  }
  emit(c, csv, out);
  return 0;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  acceptance::Options options;
  options.params = c.params;
  options.inversion_sign = c.inversion_sign;
  options.image_scaling = c.image_scaling;
  options.seed = c.seed;
  return acceptance::run_suite(c.criteria, options, out) ? 0 : 1;
}

Face face_named(const std::string& name, std::size_t line) {
  if (name == "omega1") return Face::Omega1;
  if (name == "omega2") return Face::Omega2;
  if (name == "sphere") return Face::Sphere;
  throw ConfigError("unknown face '" + name + "'", line, "data_file");
}

FaceGrid to_grid(const std::map<std::pair<double, double>, double>& samples, const std::string& face) {
  FaceGrid g;
  for (const auto& entry : samples) {
    g.u_axis.push_back(entry.first.first);
    g.v_axis.push_back(entry.first.second);
  }
  for (auto* axis : {&g.u_axis, &g.v_axis}) {
    std::sort(axis->begin(), axis->end());
    axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
  }
  if (g.u_axis.size() * g.v_axis.size() != samples.size() || samples.empty()) {
    throw ConfigError("face " + face + " does not cover a full tensor grid", 0, "data_file");
  }
  for (double u : g.u_axis) {
    for (double v : g.v_axis) g.values.push_back(samples.at({u, v}));
  }
  return g;
}

}  // namespace

BoundaryData load_grid_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'", 0, "data_file");
  std::map<Face, std::map<std::pair<double, double>, double>> faces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || (line_no == 1 && line.rfind("face", 0) == 0)) continue;
    std::stringstream ss(line);
    std::string name, field;
    std::getline(ss, name, ',');
    double values[3];
    for (double& v : values) {
      if (!std::getline(ss, field, ',')) throw ConfigError("expected face,u,v,value", line_no, "data_file");
      char* end = nullptr;
      v = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || !std::isfinite(v)) {
        throw ConfigError("malformed number '" + field + "'", line_no, "data_file");
      }
    }
    faces[face_named(name, line_no)][{values[0], values[1]}] = values[2];
  }
  for (Face f : {Face::Omega1, Face::Omega2, Face::Sphere}) {
    if (!faces.count(f)) throw ConfigError("missing face " + std::string(to_string(f)), 0, "data_file");
  }
  return grid_data(to_grid(faces[Face::Omega1], "omega1"), to_grid(faces[Face::Omega2], "omega2"),
                   to_grid(faces[Face::Sphere], "sphere"));
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config.params);
    switch (config.command) {
      case Command::specfun:
        return run_specfun(config, out);
      case Command::green:
        return run_green(config, out, err);
      case Command::solve:
        return run_solve(config, out, err);
      case Command::verify:
        return run_verify(config, out);
    }
    throw DomainError("unknown command");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (!config.output.empty() && config.command != Command::verify) {
      std::error_code ec;
      std::filesystem::remove(config.output, ec);
    }
    return 1;
  }
}

}  // namespace sdn
