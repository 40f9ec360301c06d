#include "sdn/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <set>

#include "sdn/errors.hpp"

namespace sdn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(const Setting& s, std::string_view text) {
  const std::string buf(trim(text));
  if (buf.empty()) throw ConfigError("expected a number", s.line, s.key);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("malformed number '" + buf + "'", s.line, s.key);
  }
  return v;
}

std::size_t to_count(const Setting& s, std::string_view text) {
  const std::string buf(trim(text));
  if (buf.empty() || buf.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("expected a non-negative integer, got '" + buf + "'", s.line, s.key);
  }
  errno = 0;
  const unsigned long long v = std::strtoull(buf.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError("integer out of range", s.line, s.key);
  return static_cast<std::size_t>(v);
}

std::vector<double> to_list(const Setting& s) {
  std::vector<double> out;
  if (trim(s.value).empty()) return out;
  for (const std::string& part : split(s.value, ',')) out.push_back(to_double(s, part));
  return out;
}

Point3 to_point(const Setting& s) {
  const std::vector<double> v = to_list(s);
  if (v.size() != 3) throw ConfigError("expected three comma-separated coordinates", s.line, s.key);
  return {v[0], v[1], v[2]};
}

Axis to_axis(const Setting& s) {
  const std::vector<std::string> parts = split(s.value, ':');
  if (parts.size() == 1) {
    const double v = to_double(s, parts[0]);
    return {v, v, 1};
  }
  if (parts.size() != 3) throw ConfigError("expected lo:hi:count or a single value", s.line, s.key);
  Axis a{to_double(s, parts[0]), to_double(s, parts[1]), to_count(s, parts[2])};
  if (a.count < 1) throw ConfigError("axis count must be at least 1", s.line, s.key);
  return a;
}

template <typename E, std::size_t N>
E to_enum(const Setting& s, const std::array<std::pair<std::string_view, E>, N>& table) {
  const std::string_view v = trim(s.value);
  for (const auto& [name, value] : table) {
    if (v == name) return value;
  }
  std::string allowed;
  for (const auto& entry : table) allowed += (allowed.empty() ? "" : "|") + std::string(entry.first);
  throw ConfigError("expected one of " + allowed + ", got '" + std::string(v) + "'", s.line, s.key);
}

constexpr std::array<std::pair<std::string_view, Command>, 4> kCommands{{
    {"specfun", Command::specfun},
    {"green", Command::green},
    {"solve", Command::solve},
    {"verify", Command::verify},
}};

void apply(RunConfig& c, const Setting& s) {
  const std::string& k = s.key;
  if (k == "alpha") {
    c.params.alpha = to_double(s, s.value);
  } else if (k == "beta") {
    c.params.beta = to_double(s, s.value);
  } else if (k == "R") {
    c.params.R = to_double(s, s.value);
  } else if (k == "command") {
    c.command = to_enum(s, kCommands);
  } else if (k == "data") {
    c.data = to_enum(s, std::array<std::pair<std::string_view, DataKind>, 3>{{
                            {"constant", DataKind::constant},
                            {"manufactured", DataKind::manufactured},
                            {"file", DataKind::file},
                        }});
  } else if (k == "constant_value") {
    c.constant_value = to_double(s, s.value);
  } else if (k == "pole") {
    c.pole = to_point(s);
  } else if (k == "data_file") {
    c.data_file = std::string(trim(s.value));
  } else if (k == "grid") {
    c.grid.kind = to_enum(s, std::array<std::pair<std::string_view, GridKind>, 2>{{
                                 {"box", GridKind::box},
                                 {"sphere", GridKind::sphere},
                             }});
  } else if (k == "grid_x" || k == "grid_theta") {
    c.grid.axes[0] = to_axis(s);
  } else if (k == "grid_y" || k == "grid_psi") {
    c.grid.axes[1] = to_axis(s);
  } else if (k == "grid_z") {
    c.grid.axes[2] = to_axis(s);
  } else if (k == "m0") {
    c.m0 = to_point(s);
  } else if (k == "resolution") {
    c.resolution = to_count(s, s.value);
  } else if (k == "rel_tol") {
    c.ctl.rel_tol = to_double(s, s.value);
  } else if (k == "max_terms") {
    c.ctl.max_terms = to_count(s, s.value);
  } else if (k == "inversion_sign") {
    c.inversion_sign = to_enum(s, std::array<std::pair<std::string_view, InversionSign>, 2>{{
                                      {"kelvin", InversionSign::kelvin},
                                      {"paper", InversionSign::paper},
                                  }});
  } else if (k == "image_scaling") {
    c.image_scaling = to_enum(s, std::array<std::pair<std::string_view, ImageScaling>, 2>{{
                                     {"kelvin", ImageScaling::kelvin},
                                     {"printed", ImageScaling::printed},
                                 }});
  } else if (k == "output") {
    c.output = std::string(trim(s.value));
  } else if (k == "function") {
    c.function = std::string(trim(s.value));
  } else if (k == "params") {
    c.function_params = to_list(s);
  } else if (k == "args") {
    c.function_args = to_list(s);
  } else if (k == "criteria") {
    c.criteria.clear();
    for (const std::string& id : split(s.value, ',')) {
      if (!id.empty() && id != "all") c.criteria.push_back(id);
    }
  } else if (k == "seed") {
    c.seed = to_count(s, s.value);
  } else if (k == "threads") {
    c.threads = to_count(s, s.value);
  } else {
    throw ConfigError("unknown key", s.line, k);
  }
}

std::size_t line_of(const std::vector<Setting>& settings, std::string_view key) {
  std::size_t line = 0;
  for (const Setting& s : settings) {
    if (s.key == key) line = s.line;
  }
  return line;
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v;
  if (count == 1) return {lo};
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    v.push_back(i + 1 == count ? hi : lo + t * (hi - lo));
  }
  return v;
}

std::vector<Point3> GridSpec::points(double R) const {
  std::vector<Point3> out;
  if (kind == GridKind::sphere) {
    for (double theta : axes[0].values()) {
      for (double psi : axes[1].values()) {
        out.push_back({R * std::sin(theta) * std::cos(psi), R * std::sin(theta) * std::sin(psi),
                       R * std::cos(theta)});
      }
    }
    return out;
  }
  for (double x : axes[0].values()) {
    for (double y : axes[1].values()) {
      for (double z : axes[2].values()) out.push_back({x, y, z});
    }
  }
  return out;
}

std::string_view to_string(Command c) {
  for (const auto& [name, value] : kCommands) {
    if (value == c) return name;
  }
  return "unknown";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "alpha",     "beta",       "R",          "command",        "data",          "constant_value",
      "pole",      "data_file",  "grid",       "grid_x",         "grid_y",        "grid_z",
      "grid_theta", "grid_psi",  "m0",         "resolution",     "rel_tol",       "max_terms",
      "inversion_sign", "image_scaling", "output", "function",    "params",        "args",
      "criteria",  "seed",       "threads"};
  return keys;
}

std::vector<Setting> parse_settings(std::string_view text) {
  std::vector<Setting> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value", line_no, "");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("empty key", line_no, "");
    out.push_back({key, std::string(trim(line.substr(eq + 1))), line_no});
  }
  return out;
}

RunConfig build_config(const std::vector<Setting>& settings) {
  RunConfig c;
  std::set<std::string> seen;
  for (const Setting& s : settings) {
    apply(c, s);
    seen.insert(s.key);
  }
  for (const char* required : {"alpha", "beta", "R", "command"}) {
    if (!seen.count(required)) throw ConfigError("missing required key", 0, required);
  }

  if (!(c.params.alpha > 0.0 && 2.0 * c.params.alpha < 1.0)) {
    throw ConfigError("requires 0 < 2 alpha < 1", line_of(settings, "alpha"), "alpha");
  }
  if (!(c.params.beta > 0.0 && 2.0 * c.params.beta < 1.0)) {
    throw ConfigError("requires 0 < 2 beta < 1", line_of(settings, "beta"), "beta");
  }
  if (!(c.params.R > 0.0)) throw ConfigError("requires R > 0", line_of(settings, "R"), "R");
  if (c.resolution < 8) {
    throw ConfigError("resolution must be at least 8", line_of(settings, "resolution"), "resolution");
  }
  if (!(c.ctl.rel_tol > 0.0)) {
    throw ConfigError("rel_tol must be positive", line_of(settings, "rel_tol"), "rel_tol");
  }
  if (c.ctl.max_terms < 1) {
    throw ConfigError("max_terms must be at least 1", line_of(settings, "max_terms"), "max_terms");
  }
  if (c.data == DataKind::file && c.data_file.empty()) {
    throw ConfigError("data=file requires data_file", line_of(settings, "data"), "data_file");
  }
  return c;
}

RunConfig parse_config(std::string_view text) { return build_config(parse_settings(text)); }

}  // namespace sdn
