#pragma once

// Drift calculus for Margulis functions. If f is expanded by a factor a1 > 1
// with probability at least p and never contracted by more than a2 < 1, then
// F = f^-delta satisfies A F <= c F + b for the exponent minimizing
//   phi(delta) = p a1^-delta + (1 - p) a2^-delta.

#include <optional>

namespace kmeff::contraction {

/// Default expansion factor in pipeline contexts.
inline constexpr double kDefaultA1 = 2.0;

struct ContractionParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double p = 0.0;
  double rho0 = 0.0;
  double delta = 0.0;
  double c = 0.0;  // phi(delta) < 1
  double b = 0.0;  // (a2 rho0)^-delta
};

struct AsymptoticParams {
  double h = 0.0;
  double alpha = 0.0;
  double zeta = 0.0;
  double a0 = 0.0;
};

/// Strict test of (1 - p) ln(1/a2) < p ln(a1). Throws InvalidArgument unless
/// a1 > 1, 0 < a2 < 1 and 0 < p < 1.
bool balance_holds(double a1, double a2, double p);

/// p a1^-delta + (1 - p) a2^-delta. No range checks.
double phi(double delta, double a1, double a2, double p);

/// Unique critical point of phi, which is its global minimum:
///   delta0 = -ln(-((1-p)/p) ln(a2)/ln(a1)) / ln(a1/a2).
/// Throws BalanceViolation when the balance condition fails (including
/// equality), so delta0 > 0 and phi(delta0) < 1 whenever it returns.
double delta_opt(double a1, double a2, double p);

/// delta = delta_opt, c = phi(delta), b = (a2 rho0)^-delta.
ContractionParams contraction_constants(double a1, double a2, double p, double rho0);

/// Markov bound b / ((1 - c) M) on the mass of {F >= M}.
double markov_superlevel_bound(double c, double b, double m);

/// delta_opt(2, a0 lambda^-h, 1 - zeta lambda^-alpha); nullopt while lambda is
/// not yet large enough (p or a2 out of range, or balance fails).
std::optional<double> delta_asymptotic(const AsymptoticParams& ap, double lambda);

}  // namespace kmeff::contraction
