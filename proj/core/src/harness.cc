#include "kmeff/harness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kmeff/analysis.h"
#include "kmeff/errors.h"
#include "kmeff/grassmann.h"
#include "kmeff/parallel.h"
#include "kmeff/revision.h"
#include "kmeff/rootdata.h"

namespace kmeff::harness {

namespace {

using slgroup::Matrix;

// Stream tags; one per independent family of random draws.
constexpr std::uint64_t kTagBase = 1;
constexpr std::uint64_t kTagExpansion = 2;
constexpr std::uint64_t kTagKey = 3;
constexpr std::uint64_t kTagWalk = 4;
constexpr std::uint64_t kTagGoodfn = 5;
constexpr std::uint64_t kTagGrassmann = 6;

struct Setup {
  slgroup::SemisimpleParams sp;
  slgroup::RadiusParams rp;
  std::vector<double> eps_grid;
};

Setup make_setup(const ExperimentConfig& cfg) {
  validate(cfg, std::numeric_limits<double>::infinity());
  Setup s;
  s.sp = slgroup::expanding_element(cfg.group_n, cfg.lambda, cfg.x0);
  s.rp = slgroup::radius_params(s.sp);
  validate(cfg, s.rp.rho);
  s.eps_grid = cfg.eps_grid.empty() ? default_eps_grid(s.rp.rho) : cfg.eps_grid;
  return s;
}

ExperimentReport new_report(const std::string& name, const ExperimentConfig& cfg) {
  ExperimentReport r;
  r.experiment = name;
  r.config = cfg;
  r.revision = kSourceRevision;
  return r;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Matrix sample_step(const slgroup::SemisimpleParams& sp, bool symmetrized, Rng& rng) {
  if (symmetrized && uniform01(rng) < 0.5) {
    slgroup::SemisimpleParams inv = sp;
    inv.s_lambda = sp.s_lambda.inverse();
    return slgroup::sample_mu_s(inv, rng);
  }
  return slgroup::sample_mu_s(sp, rng);
}

struct BaseModels {
  std::vector<Matrix> conjugators;
  std::vector<double> radius;
};

BaseModels draw_bases(const ExperimentConfig& cfg, const Setup& setup) {
  const auto count = static_cast<std::size_t>(cfg.n_base_points);
  BaseModels b{std::vector<Matrix>(count), std::vector<double>(count)};
  parallel_for(count, cfg.workers, [&](std::size_t i) {
    Rng rng = derive_stream(cfg.seed, kTagBase, i);
    b.conjugators[i] =
        slgroup::normalized_conjugator(sample_base_conjugator(cfg.group_n, setup.rp.rho, rng));
    b.radius[i] = radius_of(b.conjugators[i], setup.rp);
  });
  return b;
}

// Drift constants fed by the empirical expansion probability.
struct Drift {
  bool ok = false;
  stats::Estimate p_hat;
  double a2 = 0.0;
  contraction::ContractionParams cp;
};

Drift derive_drift(const ExperimentConfig& cfg, const Setup& setup, const RunOptions& opts,
                   ExperimentReport& report) {
  Drift d;
  if (opts.p_hat) {
    d.p_hat = {*opts.p_hat, 0.0};
    report.note("p_hat_source", "supplied");
  } else {
    RunOptions expansion_opts = opts;
    expansion_opts.identity_s = false;
    const ExperimentReport expansion = run_expansion_probability(cfg, expansion_opts);
    for (const auto& s : expansion.summary) {
      if (s.key == "p_hat") d.p_hat = {s.value, s.half_width.value_or(0.0)};
    }
    report.note("p_hat_source", "estimated by run_expansion_probability with the same seed");
  }
  const int ht_sum = rootdata::group_constants(cfg.group_n).ht_sum;
  d.a2 = std::pow(cfg.lambda, -static_cast<double>(ht_sum));
  report.add("p_hat", d.p_hat);
  report.add("a1", cfg.a1);
  report.add("a2", d.a2);
  report.add("rho", setup.rp.rho);
  report.add("rho0", setup.rp.rho / 2.0);

  const double p = d.p_hat.value;
  if (!(p > 0.0 && p < 1.0) || !contraction::balance_holds(cfg.a1, d.a2, p)) {
    report.note("failure", "balance_violation: (1-p) ln(1/a2) < p ln(a1) fails for p_hat = " +
                               format_double(p) + "; increase lambda");
    report.verdict("balance", false, p * std::log(cfg.a1) - (1.0 - p) * std::log(1.0 / d.a2),
                   "balance condition for the drift calculus");
    return d;
  }
  d.cp = contraction::contraction_constants(cfg.a1, d.a2, p, setup.rp.rho / 2.0);
  if (opts.delta_scale != 1.0) {
    d.cp.delta *= opts.delta_scale;
    d.cp.c = contraction::phi(d.cp.delta, cfg.a1, d.a2, p);
    d.cp.b = std::pow(d.a2 * d.cp.rho0, -d.cp.delta);
    report.add("delta_scale", opts.delta_scale);
  }
  report.add("delta", d.cp.delta);
  report.add("c", d.cp.c);
  report.add("b", d.cp.b);
  if (!(d.cp.c < 1.0)) {
    report.note("failure", "contraction_violation: phi(delta) = " + format_double(d.cp.c) +
                               " >= 1, no drift inequality with this exponent");
    report.verdict("contraction", false, 1.0 - d.cp.c, "phi(delta) < 1");
    return d;
  }
  d.ok = true;
  return d;
}

std::vector<double> simulate_walk(const ExperimentConfig& cfg, const Setup& setup,
                                  bool symmetrized, ExperimentReport& report) {
  Rng rng = derive_stream(cfg.seed, kTagWalk, 0);
  Matrix g = Matrix::Identity(cfg.group_n, cfg.group_n);
  std::vector<double> radius(static_cast<std::size_t>(cfg.walk_length));
  std::size_t capped = 0;
  for (auto& r : radius) {
    // Dropping the orthogonal factor of the state leaves the law of the walk
    // unchanged because mu_s is right K-invariant.
    g = slgroup::normalized_conjugator(sample_step(setup.sp, symmetrized, rng) * g);
    try {
      r = radius_of(g, setup.rp);
    } catch (const EnumerationCapExceeded&) {
      r = std::numeric_limits<double>::quiet_NaN();
      ++capped;
    }
  }
  report.add("walk_capped_steps", static_cast<double>(capped));
  if (capped * 100 > radius.size()) {
    throw ConfigError("random walk exceeded the enumeration cap on " + std::to_string(capped) +
                      " of " + std::to_string(radius.size()) + " steps");
  }
  return radius;
}

std::size_t burn_in(const ExperimentConfig& cfg) {
  return static_cast<std::size_t>(cfg.walk_length) / 10;
}

int parse_monomial(const std::string& name) {
  if (name == "x") return 1;
  if (name.size() >= 3 && name.rfind("x^", 0) == 0) {
    try {
      const int d = std::stoi(name.substr(2));
      if (d >= 1 && d <= 8) return d;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown function '" + name + "' (expected x or x^d with 1 <= d <= 8)");
}

std::vector<double> check_positive_decreasing(const std::vector<double>& grid,
                                              const std::vector<double>& fallback) {
  if (grid.empty()) return fallback;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] < grid[i - 1]))) {
      throw ConfigError("eps_grid must be positive and strictly decreasing");
    }
  }
  return grid;
}

std::vector<double> unit_eps_grid() {
  std::vector<double> grid;
  for (int k = 4; k <= 16; ++k) grid.push_back(std::pow(10.0, -0.25 * k));
  return grid;
}

}  // namespace

Matrix sample_base_conjugator(int n, double rho, Rng& rng) {
  if (n < 2) throw InvalidDimension("sample_base_conjugator: need n >= 2");
  if (!(rho > 0.0)) throw InvalidArgument("sample_base_conjugator: rho must be positive");
  const double span = std::log(1e3 / rho) / (n - 1);
  std::vector<double> logs(n, 0.0);
  for (int i = 1; i < n; ++i) logs[i] = logs[i - 1] + uniform(rng, 0.0, span);
  double mean = 0.0;
  for (double l : logs) mean += l / n;
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = std::exp(logs[i] - mean);
  Matrix u = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) u(i, j) = uniform(rng, -0.5, 0.5);
  }
  return linalg::haar_orthogonal(n, rng) * a * u;
}

double radius_of(const Matrix& g, const slgroup::RadiusParams& rp) {
  return slgroup::discreteness_radius(
      slgroup::DiscreteGroupModel(slgroup::normalized_conjugator(g)), rp);
}

ExperimentReport run_constants(const ExperimentConfig& cfg) {
  ExperimentReport report = new_report("constants", cfg);
  report.columns = {"n", "dim_g", "dim_u", "rank_k", "ht_sum", "order_bound", "delta_bound"};
  const int max_n = std::max(4, cfg.group_n);
  for (int n = 2; n <= max_n; ++n) {
    const auto gc = rootdata::group_constants(n);
    const auto order = rootdata::order_bound_real(gc);
    const auto lb = rootdata::delta_lower_bound(gc);
    report.rows.push_back({static_cast<double>(n), static_cast<double>(gc.dim_g),
                           static_cast<double>(gc.dim_u), static_cast<double>(gc.rank_k),
                           static_cast<double>(gc.ht_sum), order.convert_to<double>(),
                           lb.as_double()});
    const std::string suffix = "_n" + std::to_string(n);
    report.note("order_bound" + suffix, order.str());
    report.note("delta_bound" + suffix, rootdata::to_string(lb.bound));
    report.note("delta_inverse_via_order" + suffix, lb.inverse_via_order.str());
    report.note("delta_inverse_via_weights" + suffix, lb.inverse_via_weights.str());
    report.add("delta_bound" + suffix, lb.as_double());
  }
  return report;
}

ExperimentReport run_expansion_probability(const ExperimentConfig& cfg, const RunOptions& opts) {
  const Setup setup = make_setup(cfg);
  ExperimentReport report = new_report("expansion-prob", cfg);
  const double rho = setup.rp.rho;
  const BaseModels bases = draw_bases(cfg, setup);

  std::vector<std::size_t> thin;
  for (std::size_t i = 0; i < bases.radius.size(); ++i) {
    if (bases.radius[i] <= rho / 2.0) thin.push_back(i);
  }
  if (thin.empty()) {
    throw ConfigError("no base model reaches I <= rho/2; sample larger conjugators "
                      "(more base points or a larger lambda)");
  }

  const Matrix s = opts.identity_s ? Matrix::Identity(cfg.group_n, cfg.group_n)
                                   : setup.sp.s_lambda;
  const auto per_base = static_cast<std::size_t>(cfg.n_mc_samples);
  std::vector<double> expanded(thin.size() * per_base);
  parallel_for(thin.size(), cfg.workers, [&](std::size_t j) {
    Rng rng = derive_stream(cfg.seed, kTagExpansion, thin[j]);
    for (std::size_t t = 0; t < per_base; ++t) {
      const Matrix k = linalg::haar_orthogonal(cfg.group_n, rng);
      // (Gamma^k)^s for Gamma = C SL(n, Z) C^-1.
      expanded[j * per_base + t] = radius_of(s * k * bases.conjugators[thin[j]], setup.rp);
    }
  });

  report.columns = {"base_index", "sample_index", "radius_base", "radius_expanded", "expanded"};
  std::size_t hits = 0;
  double floor_margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < thin.size(); ++j) {
    const double base = bases.radius[thin[j]];
    for (std::size_t t = 0; t < per_base; ++t) {
      const double e = expanded[j * per_base + t];
      const bool hit = e >= cfg.a1 * base;
      hits += hit;
      floor_margin = std::min(floor_margin, e - base / setup.sp.ad_norm + 1e-9);
      report.rows.push_back({static_cast<double>(thin[j]), static_cast<double>(t), base, e,
                             hit ? 1.0 : 0.0});
    }
  }
  const stats::Estimate p_hat = stats::fraction_estimate(hits, expanded.size());
  report.add("rho", rho);
  report.add("ad_norm", setup.sp.ad_norm);
  report.add("n_thin_bases", static_cast<double>(thin.size()));
  report.add("n_samples", static_cast<double>(expanded.size()));
  report.add("p_hat", p_hat);
  report.note("p_hat_definition",
              "Haar fraction of k with I((Gamma^k)^s) >= a1 I(Gamma^k) over base models with "
              "I <= rho/2; estimates the non-constructive expansion probability");
  report.note("ordering", "the expanded model is s k C, i.e. I((Gamma^k)^s) = I(Gamma^{s k})");
  report.verdict("p_hat_in_open_unit_interval", p_hat.value > 0.0 && p_hat.value < 1.0,
                 std::min(p_hat.value, 1.0 - p_hat.value));
  report.verdict("p_hat_band", p_hat.half_width <= 0.05, 0.05 - p_hat.half_width,
                 "3-sigma half-width at most 0.05");
  report.verdict("global_expansion_floor", floor_margin >= 0.0, floor_margin,
                 "I(Gamma^s) >= I(Gamma)/||Ad(s^-1)|| - 1e-9 on every sample");
  return report;
}

ExperimentReport run_key_inequality(const ExperimentConfig& cfg, const RunOptions& opts) {
  const Setup setup = make_setup(cfg);
  ExperimentReport report = new_report("key-inequality", cfg);
  const Drift drift = derive_drift(cfg, setup, opts, report);
  if (!drift.ok) return report;
  const auto& cp = drift.cp;

  const BaseModels bases = draw_bases(cfg, setup);
  const auto count = bases.radius.size();
  const auto per_base = static_cast<std::size_t>(cfg.n_mc_samples);
  std::vector<double> radius(count * per_base);
  parallel_for(count, cfg.workers, [&](std::size_t i) {
    Rng rng = derive_stream(cfg.seed, kTagKey, i);
    for (std::size_t t = 0; t < per_base; ++t) {
      const Matrix g = sample_step(setup.sp, opts.symmetrized, rng);
      radius[i * per_base + t] = radius_of(g * bases.conjugators[i], setup.rp);
    }
  });

  report.columns = {"base_index", "sample_index", "radius_base", "radius_sample", "F"};
  std::size_t passed = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> f(per_base);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t t = 0; t < per_base; ++t) {
      const double r = radius[i * per_base + t];
      f[t] = std::pow(r, -cp.delta);
      report.rows.push_back(
          {static_cast<double>(i), static_cast<double>(t), bases.radius[i], r, f[t]});
    }
    const stats::Estimate a_hat = stats::mean_estimate(f);
    const double rhs = cp.c * std::pow(bases.radius[i], -cp.delta) + cp.b;
    const double margin = rhs - a_hat.lower();
    worst = std::min(worst, margin);
    passed += margin >= 0.0;
  }
  const double fraction = static_cast<double>(passed) / static_cast<double>(count);
  report.add("n_base_points", static_cast<double>(count));
  report.add("pass_fraction", fraction);
  report.add("worst_margin", worst);
  report.verdict("contraction_params",
                 cp.delta > 0.0 && cp.c > 0.0 && cp.c < 1.0 && cp.b > 0.0, 1.0 - cp.c,
                 "delta > 0, 0 < c < 1, b > 0");
  report.verdict("key_inequality", fraction >= 0.95, fraction - 0.95,
                 "fraction of base models with A_hat - 3 sigma <= c I^-delta + b");
  return report;
}

ExperimentReport run_stationary_bound(const ExperimentConfig& cfg, const RunOptions& opts) {
  const Setup setup = make_setup(cfg);
  ExperimentReport report = new_report("stationary-bound", cfg);
  const Drift drift = derive_drift(cfg, setup, opts, report);
  if (!drift.ok) return report;
  const auto& cp = drift.cp;
  const double beta = cp.b / (1.0 - cp.c);
  report.add("beta", beta);

  const std::vector<double> radius = simulate_walk(cfg, setup, opts.symmetrized, report);
  const std::size_t burn = burn_in(cfg);
  report.add("burn_in", static_cast<double>(burn));
  report.columns = {"step", "radius", "post_burn_in"};
  std::vector<double> kept;
  for (std::size_t t = 0; t < radius.size(); ++t) {
    report.rows.push_back({static_cast<double>(t), radius[t], t >= burn ? 1.0 : 0.0});
    if (t >= burn && !std::isnan(radius[t])) kept.push_back(radius[t]);
  }
  if (kept.empty()) {
    report.note("failure", "insufficient_data: no post-burn-in steps");
    report.verdict("stationary_bound", false, 0.0, "walk too short");
    return report;
  }

  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < setup.eps_grid.size(); ++k) {
    const double eps = setup.eps_grid[k];
    const auto hits = static_cast<std::size_t>(
        std::count_if(kept.begin(), kept.end(), [eps](double r) { return r < eps; }));
    const stats::Estimate nu = stats::fraction_estimate(hits, kept.size());
    const double bound = beta * std::pow(eps, cp.delta);
    worst = std::min(worst, bound - nu.lower());
    report.add("eps_" + std::to_string(k), eps);
    report.add("nu_hat_" + std::to_string(k), nu);
    report.add("bound_" + std::to_string(k), bound);
    if (hits > 0) {
      xs.push_back(std::log(eps));
      ys.push_back(std::log(nu.value));
    }
  }
  report.verdict("stationary_bound", worst >= 0.0, worst,
                 "nu_hat(I < eps) - 3 sigma <= beta eps^delta for every eps");
  if (xs.size() >= 2) {
    const stats::LineFit fit = stats::least_squares(xs, ys);
    report.add("slope", fit.slope);
    report.add("slope_points", static_cast<double>(fit.points));
    const double margin = fit.slope - (cp.delta - 0.2);
    report.verdict("stationary_slope", margin >= 0.0, margin, "log-log slope >= delta - 0.2");
  } else {
    report.note("slope", "fewer than two eps values with nonzero occupation");
    report.verdict("stationary_slope", false, 0.0, "insufficient nonzero counts");
  }
  return report;
}

ExperimentReport run_integrability(const ExperimentConfig& cfg, const RunOptions& opts) {
  const Setup setup = make_setup(cfg);
  ExperimentReport report = new_report("integrability", cfg);
  const Drift drift = derive_drift(cfg, setup, opts, report);
  if (!drift.ok) return report;
  const double delta = drift.cp.delta;

  const std::vector<double> radius = simulate_walk(cfg, setup, opts.symmetrized, report);
  const std::size_t burn = burn_in(cfg);
  report.columns = {"step", "radius", "f_half", "running_mean"};

  constexpr std::size_t kCheckpoints = 20;
  std::vector<double> means, control_means;
  double sum = 0.0, control_sum = 0.0;
  std::size_t used = 0;
  const std::size_t post = radius.size() - std::min(burn, radius.size());
  std::size_t next_checkpoint = 1;
  for (std::size_t t = burn; t < radius.size(); ++t) {
    if (std::isnan(radius[t])) continue;
    const double f = std::pow(radius[t], -delta / 2.0);
    sum += f;
    control_sum += std::pow(radius[t], -2.0 * delta);
    ++used;
    report.rows.push_back({static_cast<double>(t), radius[t], f, sum / used});
    while (next_checkpoint <= kCheckpoints &&
           (t - burn + 1) * kCheckpoints >= next_checkpoint * post) {
      means.push_back(sum / used);
      control_means.push_back(control_sum / used);
      ++next_checkpoint;
    }
  }
  if (post < kCheckpoints || means.size() < kCheckpoints) {
    report.note("failure", "insufficient_data: need at least " + std::to_string(kCheckpoints) +
                               " post-burn-in steps");
    report.verdict("integrability", false, 0.0, "walk too short");
    return report;
  }
  auto variation = [](const std::vector<double>& m) {
    const auto tail_begin = m.end() - 10;
    const auto [lo, hi] = std::minmax_element(tail_begin, m.end());
    return (*hi - *lo) / std::abs(m.back());
  };
  const double var = variation(means);
  report.add("exponent", -delta / 2.0);
  report.add("final_mean", means.back());
  report.add("relative_variation", var);
  report.add("control_exponent", -2.0 * delta);
  report.add("control_relative_variation", variation(control_means));
  report.note("control", "exponent -2 delta; diagnostic only");
  report.verdict("integrability", var < 0.1, 0.1 - var,
                 "running mean over the last 10 of 20 checkpoints varies by < 10%");
  return report;
}

ExperimentReport run_evanescence(const ExperimentConfig& cfg, const RunOptions&) {
  if (cfg.group_n != 2) throw Unsupported("evanescence is only implemented for n = 2");
  const Setup setup = make_setup(cfg);
  ExperimentReport report = new_report("evanescence", cfg);
  const double rho = setup.rp.rho;
  constexpr int kPoints = 61;
  const double log_top = std::log(1e3 / rho);

  report.columns = {"y", "radius", "closed_form"};
  std::vector<double> ys(kPoints), radius(kPoints);
  parallel_for(kPoints, cfg.workers, [&](std::size_t k) {
    const double y = std::exp(log_top * static_cast<double>(k) / (kPoints - 1));
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = 1.0 / std::sqrt(y);
    g(1, 1) = std::sqrt(y);
    ys[k] = y;
    radius[k] = slgroup::discreteness_radius(slgroup::DiscreteGroupModel(g), setup.rp);
  });
  std::vector<double> lx, ly;
  for (int k = 0; k < kPoints; ++k) {
    report.rows.push_back({ys[k], radius[k], std::min(rho, 1.0 / ys[k])});
    if (radius[k] < rho * (1.0 - 1e-12)) {
      lx.push_back(std::log(ys[k]));
      ly.push_back(std::log(radius[k]));
    }
  }
  report.add("rho", rho);
  report.add("radius_at_y1", radius[0]);
  if (lx.size() < 2) throw ConfigError("evanescence: grid never enters the thin part");
  const stats::LineFit fit = stats::least_squares(lx, ly);
  report.add("slope", fit.slope);
  for (std::size_t e = 0; e < setup.eps_grid.size(); ++e) {
    const double eps = setup.eps_grid[e];
    double threshold = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < kPoints; ++k) {
      if (radius[k] < eps) {
        threshold = ys[k];
        break;
      }
    }
    report.add("eps_" + std::to_string(e), eps);
    report.add("y_threshold_" + std::to_string(e), threshold);
  }
  report.note("y_threshold", "smallest grid y with I < eps; the closed form is 1/eps");
  report.verdict("cusp_slope", std::abs(fit.slope + 1.0) <= 0.05,
                 0.05 - std::abs(fit.slope + 1.0), "log-log slope of I(y) is -1 +- 0.05");
  report.verdict("identity_radius", std::abs(radius[0] - rho) <= 1e-12,
                 1e-12 - std::abs(radius[0] - rho), "I(y = 1) = rho");
  return report;
}

ExperimentReport run_goodfn(const ExperimentConfig& cfg, const RunOptions& opts) {
  const int d = parse_monomial(opts.function);
  const double alpha = opts.alpha > 0.0 ? opts.alpha : 1.0 / d;
  if (cfg.n_base_points < 1 || cfg.n_mc_samples < 1 || cfg.workers < 1) {
    throw ConfigError("counts must be >= 1");
  }
  const std::vector<double> grid = check_positive_decreasing(cfg.eps_grid, unit_eps_grid());
  ExperimentReport report = new_report("goodfn", cfg);

  analysis::ScalarField f{1, [d](std::span<const double> x) { return std::pow(x[0], d); },
                          opts.function};
  const analysis::Box box{{0.0}, 1.0};
  const auto n_samples =
      std::max<std::size_t>(1000, static_cast<std::size_t>(cfg.n_base_points) *
                                      static_cast<std::size_t>(cfg.n_mc_samples));
  std::vector<stats::Estimate> measures(grid.size());
  parallel_for(grid.size(), cfg.workers, [&](std::size_t k) {
    Rng rng = derive_stream(cfg.seed, kTagGoodfn, k);
    measures[k] = analysis::sublevel_measure(f, box, grid[k], n_samples, rng);
  });
  Rng rng = derive_stream(cfg.seed, kTagGoodfn, grid.size());
  const double c_hat = analysis::good_constant_estimate(f, box, alpha, grid, 32, rng);

  report.columns = {"eps", "measure", "band", "bound"};
  std::vector<double> lx, ly;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    // ||f|| on [-1, 1] is 1 for every monomial.
    const double bound = c_hat * std::pow(grid[k], alpha);
    report.rows.push_back({grid[k], measures[k].value, measures[k].half_width, bound});
    worst = std::min(worst, bound - measures[k].lower());
    if (measures[k].value > 0.0 && grid[k] < 1.0) {
      lx.push_back(std::log(grid[k]));
      ly.push_back(std::log(measures[k].value));
    }
  }
  report.add("degree", d);
  report.add("alpha", alpha);
  report.add("C_hat", c_hat);
  report.add("n_samples", static_cast<double>(n_samples));
  report.verdict("good_bound", worst >= 0.0, worst, "measure - 3 sigma <= C_hat eps^alpha");
  if (lx.size() >= 2) {
    const stats::LineFit fit = stats::least_squares(lx, ly);
    const double target = 1.0 / d;
    report.add("slope", fit.slope);
    report.add("expected_slope", target);
    const double rel = std::abs(fit.slope - target) / target;
    report.verdict("sublevel_exponent", rel <= 0.05, 0.05 - rel,
                   "fitted exponent within 5% of 1/d");
  } else {
    report.verdict("sublevel_exponent", false, 0.0, "fewer than two nonzero measures");
  }
  return report;
}

ExperimentReport run_grassmann(const ExperimentConfig& cfg, const RunOptions& opts) {
  const int n = cfg.group_n;
  if (n < 2) throw ConfigError("group_n must be >= 2");
  const int dim = n * n - 1;
  const int dim_u = n * (n - 1) / 2;
  const int l = opts.subspace_dim;
  if (l < 1 || l > dim_u) {
    throw ConfigError("subspace dimension must lie in [1, dim u^-] = [1, " +
                      std::to_string(dim_u) + "]");
  }
  if (cfg.n_base_points < 1 || cfg.n_mc_samples < 1 || cfg.workers < 1) {
    throw ConfigError("counts must be >= 1");
  }
  const std::vector<double> grid = check_positive_decreasing(cfg.eps_grid, unit_eps_grid());
  ExperimentReport report = new_report("grassmann", cfg);

  const grassmann::SplitSpace ss = slgroup::uminus_splitting(n);
  Matrix w0 = Matrix::Zero(dim, l);
  for (int j = 0; j < l; ++j) w0(dim_u + j, j) = 1.0;
  const auto n_samples = static_cast<std::size_t>(cfg.n_base_points) *
                         static_cast<std::size_t>(cfg.n_mc_samples);
  std::vector<double> ratio(n_samples), slack(n_samples);
  parallel_for(n_samples, cfg.workers, [&](std::size_t i) {
    Rng rng = derive_stream(cfg.seed, kTagGrassmann, i);
    const Matrix k = linalg::haar_orthogonal(n, rng);
    const auto w = linalg::Subspace::FromOrthonormal(slgroup::ad_operator(k) * w0);
    const grassmann::BoundCheck check = grassmann::check_projection_bound(ss, w, rng, 32);
    ratio[i] = check.lhs;
    slack[i] = check.slack;
  });

  const double worst_slack = *std::min_element(slack.begin(), slack.end());
  std::vector<stats::Estimate> measures;
  std::vector<double> lx, ly;
  for (double eps : grid) {
    const auto hits = static_cast<std::size_t>(
        std::count_if(ratio.begin(), ratio.end(), [eps](double r) { return r <= eps; }));
    measures.push_back(stats::fraction_estimate(hits, n_samples));
    if (hits > 0) {
      lx.push_back(std::log(eps));
      ly.push_back(std::log(measures.back().value));
    }
  }
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (lx.size() >= 2) slope = stats::least_squares(lx, ly).slope;

  report.columns = {"eps", "measure", "band", "fitted_slope"};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    report.rows.push_back({grid[k], measures[k].value, measures[k].half_width, slope});
  }
  report.add("n", n);
  report.add("l", l);
  report.add("n_samples", static_cast<double>(n_samples));
  report.add("slope", slope);
  report.add("worst_projection_slack", worst_slack);
  report.verdict("projection_bound", worst_slack >= -1e-10, worst_slack + 1e-10,
                 "inf ||Pw||/||w|| >= q(W) - 1e-10 on every sample");
  report.verdict("decay_slope_positive", slope > 0.0, std::isnan(slope) ? 0.0 : slope,
                 "sublevel measure of the projection ratio decays as eps -> 0");
  return report;
}

}  // namespace kmeff::harness
