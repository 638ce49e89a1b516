#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kmeff::harness {

/// Experiment configuration. JSON keys are the field names verbatim; unknown
/// keys are rejected.
struct ExperimentConfig {
  int group_n = 2;
  double lambda = 100.0;
  double x0 = 0.1;
  double a1 = 2.0;
  int n_base_points = 200;
  int n_mc_samples = 500;
  int walk_length = 10000;
  std::vector<double> eps_grid;  // empty: derived from rho, see default_eps_grid
  std::uint64_t seed = 20240611;
  int workers = 1;
};

/// Parses a JSON object; missing keys keep their defaults. Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);

ExperimentConfig load_config(const std::string& path);

/// JSON object with every field, in declaration order.
std::string config_to_json(const ExperimentConfig& cfg);

/// Counts >= 1, lambda >= 1/x0, 0 < x0 < 1, a1 > 1, and an explicit eps_grid
/// strictly decreasing with every entry in (0, rho).
void validate(const ExperimentConfig& cfg, double rho);

/// rho * 10^(-k/4) for k = 1..12: three decades below rho.
std::vector<double> default_eps_grid(double rho);

}  // namespace kmeff::harness
