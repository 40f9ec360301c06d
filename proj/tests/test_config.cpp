#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdn/config.hpp"
#include "sdn/errors.hpp"
#include "sdn/run.hpp"

using namespace sdn;

namespace {

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* kBase = "alpha=0.25\nbeta=0.25\nR=1.0\n";

}  // namespace

TEST_CASE("a minimal solve configuration parses") {
  const RunConfig c = parse_config("alpha=0.25\nbeta=0.25\nR=1.0\ncommand=solve\ndata=constant\nresolution=64");
  CHECK(c.command == Command::solve);
  CHECK(c.data == DataKind::constant);
  CHECK(c.resolution == 64);
  CHECK(c.params.alpha == 0.25);
}

TEST_CASE("comments, blanks and overrides") {
  const RunConfig c = parse_config("# header\n\nalpha = 0.1  # trailing\nbeta=0.4\nR=2\ncommand=green\nalpha=0.2\n"
                                   "m0=0.3, 0.2, 0.1\ngrid_x=0:1:3\n");
  CHECK(c.params.alpha == 0.2);
  CHECK(c.params.R == 2.0);
  CHECK(c.m0 == Point3{0.3, 0.2, 0.1});
  CHECK(c.grid.axes[0].values() == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("errors name the line and key") {
  try {
    parse_config("alpha=0.6\nbeta=0.25\nR=1\ncommand=solve");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
    CHECK(e.key() == "alpha");
  }
  try {
    parse_config("alpha=0.25\nbeta=0.25\ncommand=solve");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "R");
    CHECK(std::string(e.what()).find("R") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(std::string(kBase) + "command=solve\ncolour=red"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kBase) + "command=solve\nresolution=4"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kBase) + "command=solve\nresolution=6x"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kBase) + "command=solve\nrel_tol=abc"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kBase) + "command=fly"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kBase) + "command=solve\njust text"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kBase) + "command=solve\ndata=file"), ConfigError);
}

TEST_CASE("every documented key is accepted") {
  for (const std::string& key : config_keys()) {
    CHECK_NOTHROW(parse_settings(key + "=1"));
  }
}

TEST_CASE("sphere grids lie on the sphere") {
  const RunConfig c = parse_config(std::string(kBase) + "command=green\ngrid=sphere\ngrid_theta=0.5:2.5:3\ngrid_psi=0.2:1.2:2");
  const std::vector<Point3> pts = c.grid.points(1.0);
  CHECK(pts.size() == 6);
  for (const Point3& m : pts) CHECK(norm(m) == doctest::Approx(1.0));
}

TEST_CASE("solve writes CSV and skips non-interior points") {
  const auto dir = std::filesystem::temp_directory_path() / "sdn_test_config";
  std::filesystem::create_directories(dir);
  const auto out = dir / "u.csv";
  RunConfig c = parse_config(std::string(kBase) + "command=solve\nresolution=16\ngrid_x=0:0.4:3\ngrid_y=0.3\ngrid_z=0\n");
  c.output = out.string();
  std::ostringstream sink, err;
  CHECK(run(c, sink, err) == 0);
  const std::string csv = read(out);
  CHECK(csv.rfind("x,y,z,u,est_error,face1,face2,faceS\n", 0) == 0);
  CHECK(count_lines(csv) == 4);
  CHECK(csv.find("nan") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(err.str().find("warning") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("failures leave no CSV") {
  const auto dir = std::filesystem::temp_directory_path() / "sdn_test_config_fail";
  std::filesystem::create_directories(dir);
  const auto out = dir / "g.csv";
  RunConfig c = parse_config(std::string(kBase) + "command=green\nm0=0.9,0.9,0.9\n");
  c.output = out.string();
  std::ostringstream sink, err;
  CHECK(run(c, sink, err) != 0);
  CHECK_FALSE(std::filesystem::exists(out));
  std::filesystem::remove_all(dir);
}

TEST_CASE("green rows on the sphere vanish") {
  RunConfig c = parse_config(std::string(kBase) +
                             "command=green\nm0=0.3,0.3,0\ngrid=sphere\ngrid_theta=0.3:2.8:4\ngrid_psi=0.2:1.3:4\n");
  std::ostringstream out, err;
  REQUIRE(run(c, out, err) == 0);
  std::istringstream rows(out.str());
  std::string line;
  std::getline(rows, line);
  CHECK(line == "x,y,z,G,dG_dn,G_star,G_star_star");
  int n = 0;
  while (std::getline(rows, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string s; std::getline(ss, s, ',');) f.push_back(s);
    REQUIRE(f.size() == 7);
    CHECK(std::abs(std::stod(f[3])) <= 1e-8);
    CHECK(std::stod(f[4]) < 0.0);
    ++n;
  }
  CHECK(n == 16);
}

TEST_CASE("specfun command prints values") {
  RunConfig c = parse_config(std::string(kBase) + "command=specfun\nfunction=2f1\nparams=1,1,2\nargs=0.5");
  std::ostringstream out, err;
  CHECK(run(c, out, err) == 0);
  const std::string text = out.str();
  REQUIRE(text.rfind("x,value\n0.5,", 0) == 0);
  CHECK(std::stod(text.substr(12)) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  c.function = "nope";
  CHECK(run(c, out, err) != 0);
}

TEST_CASE("verify reports the inversion-sign failure") {
  RunConfig c = parse_config(std::string(kBase) + "command=verify\ncriteria=G-BOUNDARY\ninversion_sign=paper");
  std::ostringstream out, err;
  CHECK(run(c, out, err) != 0);
  CHECK(out.str().rfind("G-BOUNDARY FAIL measured=", 0) == 0);
  c.inversion_sign = InversionSign::kelvin;
  std::ostringstream ok;
  CHECK(run(c, ok, err) == 0);
  CHECK(ok.str().rfind("G-BOUNDARY PASS", 0) == 0);
}

TEST_CASE("grid data files load") {
  const auto dir = std::filesystem::temp_directory_path() / "sdn_test_grid";
  std::filesystem::create_directories(dir);
  const auto path = dir / "data.csv";
  {
    std::ofstream f(path);
    f << "face,u,v,value\n";
    for (const char* face : {"omega1", "omega2"}) {
      for (double u : {0.0, 1.0}) {
        for (double v : {-1.0, 1.0}) f << face << ',' << u << ',' << v << ',' << (face[5] == '1' ? 1 : 0) << '\n';
      }
    }
    for (double u : {0.0, 3.2}) {
      for (double v : {0.0, 1.6}) f << "sphere," << u << ',' << v << ",1\n";
    }
  }
  const BoundaryData d = load_grid_data(path.string());
  CHECK(d.tau1(0.3, 0.2) == 1.0);
  CHECK(d.nu2(0.3, 0.2) == 0.0);
  CHECK(d.phi({0.6, 0.48, 0.64}) == 1.0);
  {
    std::ofstream f(path);
    f << "face,u,v,value\nomega1,0,0,1\nomega1,1,1,1\n";
  }
  CHECK_THROWS_AS(load_grid_data(path.string()), ConfigError);
  std::filesystem::remove_all(dir);
}
