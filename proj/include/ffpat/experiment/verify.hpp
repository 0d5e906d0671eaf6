#ifndef FFPAT_EXPERIMENT_VERIFY_HPP
#define FFPAT_EXPERIMENT_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "ffpat/experiment/config.hpp"

namespace ffpat {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

inline const std::vector<std::string> kVerifySuites = {"adjoints", "oracles", "contraction", "all"};

/// Runs a property suite on the grids of `cfg` and returns one line per
/// check. Unknown suite names throw ConfigError. `on_result` sees each
/// check as soon as it finishes.
std::vector<CheckResult> run_verify_suite(const std::string& suite, const ExperimentConfig& cfg,
                                          const std::function<void(const CheckResult&)>& on_result = {});

std::string format_check(const CheckResult& r);

}  // namespace ffpat

#endif  // FFPAT_EXPERIMENT_VERIFY_HPP
