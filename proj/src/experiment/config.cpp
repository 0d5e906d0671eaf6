#include "ffpat/experiment/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "ffpat/core/errors.hpp"
#include "ffpat/fields/io.hpp"
#include "ffpat/fields/phantom.hpp"

namespace ffpat {

namespace {

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::logic_error&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Key {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Key int_key(T ExperimentConfig::*field) {
  return {[field](ExperimentConfig& c, const std::string& v) {
            c.*field = static_cast<T>(parse_int("value", v));
          },
          [field](const ExperimentConfig& c) { return std::to_string(c.*field); }};
}

Key double_key(double ExperimentConfig::*field) {
  return {[field](ExperimentConfig& c, const std::string& v) { c.*field = parse_double("value", v); },
          [field](const ExperimentConfig& c) { return fmt(c.*field); }};
}

Key string_key(std::string ExperimentConfig::*field) {
  return {[field](ExperimentConfig& c, const std::string& v) { c.*field = v; },
          [field](const ExperimentConfig& c) { return c.*field; }};
}

const std::vector<std::pair<std::string, Key>>& keys() {
  static const std::vector<std::pair<std::string, Key>> table = {
      {"object_n", int_key(&ExperimentConfig::object_n)},
      {"object_half_width", double_key(&ExperimentConfig::object_half_width)},
      {"sim_n", int_key(&ExperimentConfig::sim_n)},
      {"sim_half_width", double_key(&ExperimentConfig::sim_half_width)},
      {"final_time", double_key(&ExperimentConfig::final_time)},
      {"steps", int_key(&ExperimentConfig::steps)},
      {"n_theta", int_key(&ExperimentConfig::n_theta)},
      {"exterior_radius", double_key(&ExperimentConfig::exterior_radius)},
      {"angles", string_key(&ExperimentConfig::angles)},
      {"noise", double_key(&ExperimentConfig::noise)},
      {"seed", int_key(&ExperimentConfig::seed)},
      {"solvers",
       {[](ExperimentConfig& c, const std::string& v) {
          c.solvers.clear();
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            if (item == "all") {
              c.solvers = kSolverNames;
              return;
            }
            if (std::find(kSolverNames.begin(), kSolverNames.end(), item) == kSolverNames.end()) {
              throw ConfigError("config: unknown solver '" + item + "'");
            }
            c.solvers.push_back(item);
          }
        },
        [](const ExperimentConfig& c) {
          std::string s;
          for (const auto& name : c.solvers) s += (s.empty() ? "" : ",") + name;
          return s;
        }}},
      {"norm_iters", int_key(&ExperimentConfig::norm_iters)},
      {"cp_norm_iters", int_key(&ExperimentConfig::cp_norm_iters)},
      {"cgne_iters", int_key(&ExperimentConfig::cgne_iters)},
      {"landweber_iters", int_key(&ExperimentConfig::landweber_iters)},
      {"landweber_step", double_key(&ExperimentConfig::landweber_step)},
      {"sd_iters", int_key(&ExperimentConfig::sd_iters)},
      {"fbs_iters", int_key(&ExperimentConfig::fbs_iters)},
      {"fbs_lambda", double_key(&ExperimentConfig::fbs_lambda)},
      {"fbs_step", double_key(&ExperimentConfig::fbs_step)},
      {"cp_iters", int_key(&ExperimentConfig::cp_iters)},
      {"cp_lambda", double_key(&ExperimentConfig::cp_lambda)},
      {"neumann_iters", int_key(&ExperimentConfig::neumann_iters)},
      {"neumann_lambda", double_key(&ExperimentConfig::neumann_lambda)},
      {"neumann_data", string_key(&ExperimentConfig::neumann_data)},
      {"snapshots", int_key(&ExperimentConfig::snapshots)},
      {"wave_snapshots", int_key(&ExperimentConfig::wave_snapshots)},
      {"out", string_key(&ExperimentConfig::out)},
  };
  return table;
}

}  // namespace

ExperimentConfig desk_profile() { return ExperimentConfig{}; }

ExperimentConfig paper_profile() {
  ExperimentConfig c;
  c.profile = "paper";
  c.object_n = 201;
  c.sim_n = 801;
  c.steps = 600;
  c.n_theta = 1000;
  return c;
}

ExperimentConfig profile(const std::string& name) {
  if (name == "desk") return desk_profile();
  if (name == "paper") return paper_profile();
  throw ConfigError("config: unknown profile '" + name + "' (expected desk or paper)");
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "profile") {
    cfg = profile(value);
    return;
  }
  for (const auto& [name, k] : keys()) {
    if (name == key) {
      try {
        k.set(cfg, value);
      } catch (const ConfigError& e) {
        std::string msg = e.what();
        const auto pos = msg.find("'value'");
        if (pos != std::string::npos) msg.replace(pos, 7, "'" + key + "'");
        throw ConfigError(msg);
      }
      return;
    }
  }
  throw ConfigError("config: unknown key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out{{"profile", cfg.profile}};
  for (const auto& [name, k] : keys()) out.emplace_back(name, k.get(cfg));
  return out;
}

std::map<std::string, std::string> read_config_entries(const std::filesystem::path& path) {
  std::map<std::string, std::string> entries;
  for (const auto& [key, value] : read_header(path)) {
    const std::string k = trim(key);
    if (k.rfind("result.", 0) == 0) continue;
    entries[k] = trim(value);
  }
  return entries;
}

void apply_config_entries(ExperimentConfig& cfg, const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (key != "profile") set_config_value(cfg, key, value);
  }
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  const auto entries = read_config_entries(path);
  if (auto it = entries.find("profile"); it != entries.end()) base = profile(it->second);
  apply_config_entries(base, entries);
  return base;
}

MaskSpec ExperimentConfig::mask() const {
  MaskSpec m;
  m.exterior_radius = exterior_radius;
  if (angles == "full") {
    m.theta_min_deg = 0.0;
    m.theta_max_deg = 180.0;
  } else if (angles == "limited") {
    m.theta_min_deg = 45.0;
    m.theta_max_deg = 180.0;
  } else {
    const auto colon = angles.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("config: 'angles' must be full, limited or <min>:<max>, got '" + angles + "'");
    }
    m.theta_min_deg = parse_double("angles", angles.substr(0, colon));
    m.theta_max_deg = parse_double("angles", angles.substr(colon + 1));
  }
  m.validate();
  return m;
}

Grid ExperimentConfig::object_grid() const { return Grid(object_n, object_half_width); }
Grid ExperimentConfig::sim_grid() const { return Grid(sim_n, sim_half_width); }

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("config: " + what);
  };
  require(object_n >= 3, "object_n must be >= 3");
  require(sim_n >= 3, "sim_n must be >= 3");
  require(object_half_width > 0.0 && sim_half_width >= object_half_width,
          "need 0 < object_half_width <= sim_half_width");
  require(steps >= 1, "steps must be >= 1");
  require(final_time > 0.0, "final_time must be positive");
  require(n_theta >= 1, "n_theta must be >= 1");
  require(noise >= 0.0, "noise must be >= 0");
  require(!solvers.empty(), "no solver selected");
  require(norm_iters >= 1 && cp_norm_iters >= 1, "power iteration counts must be >= 1");
  require(cgne_iters >= 1 && landweber_iters >= 1 && sd_iters >= 1 && fbs_iters >= 1 &&
              cp_iters >= 1 && neumann_iters >= 1,
          "iteration counts must be >= 1");
  require(landweber_step > 0.0 && fbs_step > 0.0, "step multipliers must be positive");
  require(fbs_lambda >= 0.0, "fbs_lambda must be >= 0");
  require(cp_lambda > 0.0, "cp_lambda must be positive");
  require(neumann_lambda > 0.0 && neumann_lambda < 2.0, "neumann_lambda must lie in (0, 2)");
  require(neumann_data == "field" || neumann_data == "fbp", "neumann_data must be field or fbp");
  require(snapshots >= 0 && wave_snapshots >= 0, "snapshot strides must be >= 0");
  require(!out.empty(), "out must name a directory");
  (void)mask();
  // Grid-level checks run through the same code paths the solvers use.
  const Grid obj = object_grid();
  const Grid sim = sim_grid();
  require(nested_offset(sim, obj) >= 0, "object grid must be nested in the simulation grid");
  WaveConfig wc{default_medium(sim), final_time, steps};
  wc.validate();
  SinogramGeom::for_grid(sim, n_theta);
}

}  // namespace ffpat
