#ifndef FFPAT_EXPERIMENT_CONFIG_HPP
#define FFPAT_EXPERIMENT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ffpat/radon/sinogram.hpp"
#include "ffpat/wave/wave_config.hpp"

namespace ffpat {

inline const std::vector<std::string> kSolverNames = {"cgne", "landweber", "sd",
                                                      "fbs",  "cp",        "neumann"};

struct ExperimentConfig {
  std::string profile = "desk";
  int object_n = 101;
  double object_half_width = 1.0;
  int sim_n = 401;
  double sim_half_width = 4.0;
  double final_time = 3.0;
  int steps = 300;
  int n_theta = 250;
  double exterior_radius = 1.0;
  std::string angles = "full";  // full | limited | <min>:<max> in degrees
  double noise = 0.005;
  std::uint64_t seed = 1;
  std::vector<std::string> solvers = {"cgne", "fbs", "cp"};

  int norm_iters = 20;       // power iterations for |A|
  int cp_norm_iters = 50;    // power iterations for |(A; D)|
  int cgne_iters = 60;
  int landweber_iters = 100;
  double landweber_step = 1.0;  // multiple of 1/|A|^2
  int sd_iters = 100;
  int fbs_iters = 100;
  double fbs_lambda = 1e-3;
  double fbs_step = 1.0;        // multiple of 1/|A|^2
  int cp_iters = 200;
  double cp_lambda = 3e-4;
  int neumann_iters = 15;
  double neumann_lambda = 1.0;
  std::string neumann_data = "field";  // field | fbp

  int snapshots = 0;       // store every k-th iterate
  int wave_snapshots = 0;  // dump every k-th step of the data simulation
  std::string out = "ffpat_out";

  /// Throws ConfigError naming the offending key.
  void validate() const;

  MaskSpec mask() const;
  Grid object_grid() const;
  Grid sim_grid() const;
};

ExperimentConfig desk_profile();
ExperimentConfig paper_profile();
/// "desk" or "paper"; anything else is a ConfigError.
ExperimentConfig profile(const std::string& name);

/// Sets one key from its text form. Unknown keys and malformed values throw
/// ConfigError. Setting "profile" resets every other key to that profile.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Every key in a fixed order, values in a form set_config_value accepts.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// Reads key=value lines ('#' comments allowed) on top of `base`. A
/// "profile" line is applied before the other keys. Keys starting with
/// "result." are ignored, so summary files load back as configs.
ExperimentConfig load_config(const std::filesystem::path& path,
                             ExperimentConfig base = desk_profile());

/// The raw, trimmed key=value pairs of a config file (result.* keys dropped).
std::map<std::string, std::string> read_config_entries(const std::filesystem::path& path);

/// Applies entries other than "profile" on top of `cfg`.
void apply_config_entries(ExperimentConfig& cfg, const std::map<std::string, std::string>& entries);

}  // namespace ffpat

#endif  // FFPAT_EXPERIMENT_CONFIG_HPP
