#include "kmeff/contraction.h"

#include <cmath>
#include <string>

#include "kmeff/errors.h"

namespace kmeff::contraction {

namespace {

void require_ranges(double a1, double a2, double p) {
  if (!(a1 > 1.0) || !(a2 > 0.0 && a2 < 1.0) || !(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("drift parameters out of range: need a1 > 1, 0 < a2 < 1, 0 < p < 1 (got a1=" +
                          std::to_string(a1) + ", a2=" + std::to_string(a2) +
                          ", p=" + std::to_string(p) + ")");
  }
}

}  // namespace

bool balance_holds(double a1, double a2, double p) {
  require_ranges(a1, a2, p);
  return (1.0 - p) * std::log(1.0 / a2) < p * std::log(a1);
}

double phi(double delta, double a1, double a2, double p) {
  return p * std::pow(a1, -delta) + (1.0 - p) * std::pow(a2, -delta);
}

double delta_opt(double a1, double a2, double p) {
  if (!balance_holds(a1, a2, p)) {
    throw BalanceViolation("balance condition (1-p) ln(1/a2) < p ln(a1) fails for a1=" +
                           std::to_string(a1) + ", a2=" + std::to_string(a2) +
                           ", p=" + std::to_string(p));
  }
  const double ratio = -((1.0 - p) / p) * (std::log(a2) / std::log(a1));
  return -std::log(ratio) / std::log(a1 / a2);
}

ContractionParams contraction_constants(double a1, double a2, double p, double rho0) {
  if (!(rho0 > 0.0)) throw InvalidArgument("contraction_constants: rho0 must be > 0");
  ContractionParams out;
  out.a1 = a1;
  out.a2 = a2;
  out.p = p;
  out.rho0 = rho0;
  out.delta = delta_opt(a1, a2, p);
  out.c = phi(out.delta, a1, a2, p);
  out.b = std::pow(a2 * rho0, -out.delta);
  return out;
}

double markov_superlevel_bound(double c, double b, double m) {
  if (!(c > 0.0 && c < 1.0) || !(b > 0.0) || !(m > 0.0)) {
    throw InvalidArgument("markov_superlevel_bound: need 0 < c < 1, b > 0, M > 0");
  }
  return b / ((1.0 - c) * m);
}

std::optional<double> delta_asymptotic(const AsymptoticParams& ap, double lambda) {
  if (!(ap.h > 0 && ap.alpha > 0 && ap.zeta > 0 && ap.a0 > 0)) {
    throw InvalidArgument("delta_asymptotic: h, alpha, zeta, a0 must be positive");
  }
  if (!(lambda > 1.0)) throw InvalidArgument("delta_asymptotic: lambda must exceed 1");
  const double a2 = ap.a0 * std::pow(lambda, -ap.h);
  const double p = 1.0 - ap.zeta * std::pow(lambda, -ap.alpha);
  if (!(p > 0.0 && p < 1.0) || !(a2 > 0.0 && a2 < 1.0)) return std::nullopt;
  if (!balance_holds(kDefaultA1, a2, p)) return std::nullopt;
  return delta_opt(kDefaultA1, a2, p);
}

}  // namespace kmeff::contraction
