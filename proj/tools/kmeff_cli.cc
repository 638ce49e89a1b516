// Command line front end for the experiments in kmeff::harness.
//
//   kmeff <subcommand> [--config cfg.json] [--seed N] [--workers K] [--out DIR]
//
// Exit status: 0 when every verdict passes, 2 when some verdict fails, 1 on a
// configuration or runtime error.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kmeff/config.h"
#include "kmeff/harness.h"
#include "kmeff/report.h"

namespace {

using kmeff::harness::ExperimentConfig;
using kmeff::harness::ExperimentReport;
using kmeff::harness::RunOptions;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "Experiment config (JSON)")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", flags.seed, "Override the config seed");
  sub->add_option("--workers", flags.workers, "Override the worker count")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", flags.out, "Output directory for report.json and samples.csv");
}

ExperimentConfig resolve_config(const CommonFlags& flags) {
  ExperimentConfig cfg = flags.config_path.empty() ? ExperimentConfig{}
                                                   : kmeff::harness::load_config(flags.config_path);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.workers) cfg.workers = *flags.workers;
  return cfg;
}

void print_summary(const ExperimentReport& report) {
  std::printf("experiment: %s  (seed %llu, revision %s)\n", report.experiment.c_str(),
              static_cast<unsigned long long>(report.config.seed), report.revision.c_str());
  for (const auto& s : report.summary) {
    if (s.half_width) {
      std::printf("  %-28s %.10g +- %.3g\n", s.key.c_str(), s.value, *s.half_width);
    } else {
      std::printf("  %-28s %.10g\n", s.key.c_str(), s.value);
    }
  }
  for (const auto& n : report.notes) std::printf("  note %s: %s\n", n.key.c_str(), n.text.c_str());
  for (const auto& v : report.verdicts) {
    std::printf("  [%s] %s (margin %.6g) %s\n", v.pass ? "PASS" : "FAIL", v.id.c_str(), v.margin,
                v.detail.c_str());
  }
}

void print_constants_table(const ExperimentReport& report) {
  std::printf("%3s %6s %6s %7s %7s %14s %s\n", "n", "dim_g", "dim_u", "rank_k", "ht_sum",
              "order_bound", "delta_bound");
  for (const auto& row : report.rows) {
    const int n = static_cast<int>(row[0]);
    const std::string suffix = "_n" + std::to_string(n);
    std::string exact;
    for (const auto& note : report.notes) {
      if (note.key == "delta_bound" + suffix) exact = note.text;
    }
    std::printf("%3d %6d %6d %7d %7d %14.0f %s = %.6e\n", n, static_cast<int>(row[1]),
                static_cast<int>(row[2]), static_cast<int>(row[3]), static_cast<int>(row[4]),
                row[5], exact.c_str(), row[6]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective constants and Monte Carlo checks for SL(n, R) / SL(n, Z)"};
  app.require_subcommand(1);

  CommonFlags flags;
  RunOptions opts;
  double p_hat = -1.0;

  using Runner = std::function<ExperimentReport(const ExperimentConfig&, const RunOptions&)>;
  std::vector<std::pair<CLI::App*, Runner>> runners;
  auto add = [&](const std::string& name, const std::string& help, Runner run) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, flags);
    runners.emplace_back(sub, std::move(run));
    return sub;
  };

  add("constants", "Group constants and exponent lower bounds",
      [](const ExperimentConfig& cfg, const RunOptions&) {
        return kmeff::harness::run_constants(cfg);
      });
  auto* expansion = add("expansion-prob", "Estimate the expansion probability p",
                        kmeff::harness::run_expansion_probability);
  expansion->add_flag("--identity-s", opts.identity_s, "Replace s_lambda by the identity");
  for (const char* name : {"key-inequality", "stationary-bound", "integrability"}) {
    Runner run = std::string(name) == "key-inequality"     ? Runner(kmeff::harness::run_key_inequality)
                 : std::string(name) == "stationary-bound" ? Runner(kmeff::harness::run_stationary_bound)
                                                           : Runner(kmeff::harness::run_integrability);
    auto* sub = add(name, std::string("Run the ") + name + " experiment", run);
    sub->add_option("--p-hat", p_hat, "Use this expansion probability instead of estimating it");
    sub->add_option("--delta-scale", opts.delta_scale, "Multiply the optimal exponent");
    sub->add_flag("--symmetrized", opts.symmetrized, "Sample from (mu_s + mu_s^*)/2");
  }
  add("evanescence", "Discreteness radius along the cusp ray (n = 2)",
      kmeff::harness::run_evanescence);
  auto* goodfn = add("goodfn", "Sublevel measures of x^d on [-1, 1]", kmeff::harness::run_goodfn);
  goodfn->add_option("--function", opts.function, "x, x^2, x^3, ...");
  goodfn->add_option("--alpha", opts.alpha, "Goodness exponent (default 1/d)");
  auto* grass = add("grassmann", "Projection ratios of Ad(K)-rotated subspaces",
                    kmeff::harness::run_grassmann);
  grass->add_option("--l", opts.subspace_dim, "Subspace dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (p_hat >= 0.0) opts.p_hat = p_hat;

  try {
    const ExperimentConfig cfg = resolve_config(flags);
    for (const auto& [sub, run] : runners) {
      if (!sub->parsed()) continue;
      const ExperimentReport report = run(cfg, opts);
      if (report.experiment == "constants") print_constants_table(report);
      print_summary(report);
      const std::string out = flags.out.empty() ? "kmeff_out/" + sub->get_name() : flags.out;
      kmeff::harness::write_report(report, out);
      std::printf("wrote %s/report.json and %s/samples.csv\n", out.c_str(), out.c_str());
      return report.all_pass() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
