#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "ffpat/core/errors.hpp"
#include "ffpat/experiment/config.hpp"
#include "ffpat/experiment/experiment.hpp"
#include "ffpat/experiment/verify.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitVerify = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-field photoacoustic tomography: simulation, adjoint checks and reconstruction"};
  app.set_help_all_flag("--help-all", "List every configuration key");

  std::string config_path;
  std::string profile_name;
  std::string verify_suite;
  bool quiet = false;
  app.add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
  app.add_option("--profile", profile_name, "Base profile")
      ->check(CLI::IsMember({"desk", "paper"}));
  app.add_option("--verify", verify_suite, "Run a property suite instead of an experiment")
      ->check(CLI::IsMember(ffpat::kVerifySuites));
  app.add_flag("-q,--quiet", quiet, "Only print the final summary");

  // Every config key is also a flag; flags override the file.
  std::map<std::string, std::optional<std::string>> overrides;
  auto* keys = app.add_option_group("Configuration keys");
  for (const auto& [key, value] : ffpat::config_entries(ffpat::desk_profile())) {
    if (key == "profile") continue;
    std::string names = "--" + key;
    if (key == "solvers") names = "--solver,--solvers";
    keys->add_option_function<std::string>(
        names, [&overrides, key = key](const std::string& v) { overrides[key] = v; },
        "default (desk): " + value);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kExitConfig;
  }

  auto log = [quiet](const std::string& m) {
    if (!quiet) std::cerr << m << '\n';
  };

  std::string stage = "configuration";
  try {
    // Precedence: flags, then the config file, then the profile.
    std::map<std::string, std::string> entries;
    if (!config_path.empty()) entries = ffpat::read_config_entries(config_path);
    std::string base = "desk";
    if (!profile_name.empty()) {
      base = profile_name;
    } else if (auto it = entries.find("profile"); it != entries.end()) {
      base = it->second;
    }
    ffpat::ExperimentConfig cfg = ffpat::profile(base);
    ffpat::apply_config_entries(cfg, entries);
    for (const auto& [key, value] : overrides) {
      if (value) ffpat::set_config_value(cfg, key, *value);
    }
    cfg.validate();

    if (!verify_suite.empty()) {
      stage = "verify " + verify_suite;
      bool ok = true;
      const auto results = ffpat::run_verify_suite(verify_suite, cfg, [&](const auto& r) {
        std::cout << ffpat::format_check(r) << std::endl;
      });
      for (const auto& r : results) ok = ok && r.passed;
      std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
      return ok ? 0 : kExitVerify;
    }

    stage = "experiment";
    const auto result = ffpat::run_experiment(cfg, log);
    for (const auto& name : cfg.solvers) {
      const auto& run = result.runs.at(name);
      std::cout << name << ": best rel error " << run.best_error() << " at iteration "
                << run.best_iteration << " of " << run.iterations() << '\n';
    }
    std::cout << "artifacts written to " << cfg.out << '\n';
    return 0;
  } catch (const ffpat::ConfigError& e) {
    std::cerr << "error (" << stage << "): " << e.what() << '\n';
    return kExitConfig;
  } catch (const ffpat::DivergenceError& e) {
    std::cerr << "error (" << stage << "): divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error (" << stage << "): " << e.what() << '\n';
    return 1;
  }
}
