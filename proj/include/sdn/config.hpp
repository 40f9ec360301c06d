#pragma once

// Plain-text key=value run configuration shared by the config file and the
// command-line flags.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sdn/greens.hpp"

namespace sdn {

enum class Command { specfun, green, solve, verify };
enum class DataKind { constant, manufactured, file };
enum class GridKind { box, sphere };

/// `count` equally spaced values from lo to hi inclusive (count = 1 gives lo).
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 1;

  std::vector<double> values() const;
};

/// box: axes are x, y, z. sphere: axes[0] is theta, axes[1] is psi (radius R).
struct GridSpec {
  GridKind kind = GridKind::box;
  std::array<Axis, 3> axes{Axis{0.3, 0.3, 1}, Axis{0.3, 0.3, 1}, Axis{0.0, 0.0, 1}};

  std::vector<Point3> points(double R) const;
};

struct RunConfig {
  Parameters params;
  Command command = Command::solve;
  DataKind data = DataKind::constant;
  double constant_value = 1.0;
  Point3 pole{0.5, 0.5, 1.5};
  std::string data_file;
  GridSpec grid;
  Point3 m0{0.3, 0.3, 0.0};
  std::size_t resolution = 64;
  SeriesControl ctl;
  InversionSign inversion_sign = InversionSign::kelvin;
  ImageScaling image_scaling = ImageScaling::kelvin;
  std::string output;
  std::string function = "f2";
  std::vector<double> function_params;
  std::vector<double> function_args;
  std::vector<std::string> criteria;  ///< empty means all
  std::uint64_t seed = 20240531;
  std::size_t threads = 0;
};

/// One key=value pair; `line` is 0 for values that did not come from a file.
struct Setting {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Splits a document into settings. Blank lines and `#` comments are skipped.
std::vector<Setting> parse_settings(std::string_view text);

/// Builds and validates a configuration; later settings override earlier ones.
/// alpha, beta, R and command are required.
RunConfig build_config(const std::vector<Setting>& settings);

RunConfig parse_config(std::string_view text);

/// Every key accepted by the configuration, in documentation order.
const std::vector<std::string>& config_keys();

std::string_view to_string(Command c);

}  // namespace sdn
