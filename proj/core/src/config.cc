#include "kmeff/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "kmeff/errors.h"

namespace kmeff::harness {

namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"group_n",       "lambda",       "x0",
                                          "a1",            "n_base_points", "n_mc_samples",
                                          "walk_length",   "eps_grid",     "seed",
                                          "workers"};
  return keys;
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  const Json& v = j.at(key);
  // get<int>() would silently truncate 1.5 or wrap -1.
  if constexpr (std::is_integral_v<T>) {
    const bool ok = std::is_unsigned_v<T> ? v.is_number_unsigned() : v.is_number_integer();
    if (!ok) {
      throw ConfigError(std::string("config key '") + key + "' must be " +
                        (std::is_unsigned_v<T> ? "a non-negative integer" : "an integer"));
    }
  }
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type: " + e.what());
  }
}

void require_count(int value, const char* key) {
  if (value < 1) throw ConfigError(std::string("config key '") + key + "' must be >= 1");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known_keys().count(item.key())) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }
  ExperimentConfig cfg;
  read(j, "group_n", cfg.group_n);
  read(j, "lambda", cfg.lambda);
  read(j, "x0", cfg.x0);
  read(j, "a1", cfg.a1);
  read(j, "n_base_points", cfg.n_base_points);
  read(j, "n_mc_samples", cfg.n_mc_samples);
  read(j, "walk_length", cfg.walk_length);
  read(j, "eps_grid", cfg.eps_grid);
  read(j, "seed", cfg.seed);
  read(j, "workers", cfg.workers);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["group_n"] = cfg.group_n;
  j["lambda"] = cfg.lambda;
  j["x0"] = cfg.x0;
  j["a1"] = cfg.a1;
  j["n_base_points"] = cfg.n_base_points;
  j["n_mc_samples"] = cfg.n_mc_samples;
  j["walk_length"] = cfg.walk_length;
  j["eps_grid"] = cfg.eps_grid;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  return j.dump();
}

void validate(const ExperimentConfig& cfg, double rho) {
  if (cfg.group_n < 2) throw ConfigError("group_n must be >= 2");
  require_count(cfg.n_base_points, "n_base_points");
  require_count(cfg.n_mc_samples, "n_mc_samples");
  require_count(cfg.walk_length, "walk_length");
  require_count(cfg.workers, "workers");
  if (!(cfg.x0 > 0.0 && cfg.x0 < 1.0)) throw ConfigError("x0 must lie in (0, 1)");
  if (!(cfg.lambda * cfg.x0 >= 1.0 - 1e-12)) throw ConfigError("lambda must be >= 1/x0");
  if (!(cfg.a1 > 1.0)) throw ConfigError("a1 must exceed 1");
  for (std::size_t i = 0; i < cfg.eps_grid.size(); ++i) {
    const double e = cfg.eps_grid[i];
    if (!(e > 0.0 && e < rho)) {
      throw ConfigError("eps_grid entries must lie in (0, rho = " + std::to_string(rho) + ")");
    }
    if (i > 0 && !(e < cfg.eps_grid[i - 1])) {
      throw ConfigError("eps_grid must be strictly decreasing");
    }
  }
}

std::vector<double> default_eps_grid(double rho) {
  std::vector<double> grid;
  for (int k = 1; k <= 12; ++k) grid.push_back(rho * std::pow(10.0, -0.25 * k));
  return grid;
}

}  // namespace kmeff::harness
