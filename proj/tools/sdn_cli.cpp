// sdn: evaluate special functions and kernels, solve over point grids, run the
// acceptance suite. Every config key is also a flag; flags override the file.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "sdn/config.hpp"
#include "sdn/errors.hpp"
#include "sdn/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet-Neumann solver for H(u) = 0 in a quarter ball"};
  std::string config_path;
  app.add_option("-c,--config", config_path, "key=value configuration file");
  std::map<std::string, std::string> flags;
  for (const std::string& key : sdn::config_keys()) {
    app.add_option("--" + key, flags[key], "overrides '" + key + "' from the config file");
  }
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<sdn::Setting> settings;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw sdn::ConfigError("cannot open '" + config_path + "'", 0, "");
      std::stringstream text;
      text << in.rdbuf();
      settings = sdn::parse_settings(text.str());
    }
    for (const std::string& key : sdn::config_keys()) {
      if (app.count("--" + key) > 0) settings.push_back({key, flags[key], 0});
    }
    return sdn::run(sdn::build_config(settings), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
