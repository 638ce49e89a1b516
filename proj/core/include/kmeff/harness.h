#pragma once

// Seeded Monte Carlo experiments on SL(n, R) / SL(n, Z). Every sample draws
// from its own stream derive_stream(seed, tag, index), so reports do not
// depend on the worker count.

#include <optional>
#include <string>

#include "kmeff/config.h"
#include "kmeff/contraction.h"
#include "kmeff/report.h"
#include "kmeff/slgroup.h"
#include "kmeff/stats.h"

namespace kmeff::harness {

struct RunOptions {
  std::optional<double> p_hat;   // skip the expansion estimate and use this value
  double delta_scale = 1.0;      // multiplies the optimal exponent (error-path checks)
  bool symmetrized = false;      // sample from (mu_s + mu_s^*) / 2 instead of mu_s
  bool identity_s = false;       // replace s_lambda by I in the expansion experiment
  std::string function = "x^3";  // goodfn: x^d for d = 1, 2, 3, ...
  double alpha = 0.0;            // goodfn: 0 selects 1/d
  int subspace_dim = 1;          // grassmann: dim W
};

/// Conjugator k * a * u: Haar k, diagonal a with log-uniform ratios of
/// successive entries in [1, 10^3 / rho] (total), unipotent upper u with
/// entries in [-1/2, 1/2]. Det 1.
slgroup::Matrix sample_base_conjugator(int n, double rho, Rng& rng);

/// Discreteness radius of g SL(n, Z) g^-1 for an arbitrary det-1 g.
double radius_of(const slgroup::Matrix& g, const slgroup::RadiusParams& rp);

/// Table of group constants and exponent bounds for n = 2 .. max(4, group_n).
ExperimentReport run_constants(const ExperimentConfig& cfg);

/// Fraction of Haar k with I((Gamma^k)^s) >= a1 * I(Gamma^k), over base models
/// with I <= rho / 2.
ExperimentReport run_expansion_probability(const ExperimentConfig& cfg,
                                           const RunOptions& opts = {});

/// Monte Carlo check of A_mu I^-delta <= c I^-delta + b at every base model.
ExperimentReport run_key_inequality(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Occupation measure of {I < eps} along a mu_s random walk against
/// beta * eps^delta, plus the log-log slope.
ExperimentReport run_stationary_bound(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Running mean of I^(-delta/2) along the walk; passes when it stabilizes.
ExperimentReport run_integrability(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// I along the cusp ray diag(y^-1/2, y^1/2) of SL(2, R) / SL(2, Z).
ExperimentReport run_evanescence(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Sublevel measures and the empirical goodness constant of x^d on [-1, 1].
ExperimentReport run_goodfn(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Haar measure of {k : inf ||P w|| / ||w|| <= eps over W = Ad(k) W0} for
/// P the projection of sl(n) onto u^-, with W0 spanned by root vectors of u^+.
ExperimentReport run_grassmann(const ExperimentConfig& cfg, const RunOptions& opts = {});

}  // namespace kmeff::harness
