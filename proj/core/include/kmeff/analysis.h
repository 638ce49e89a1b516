#pragma once

// Sublevel-set measures, empirical (C, alpha)-goodness constants, and
// vanishing orders of matrix coefficients on compact groups.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kmeff/random.h"
#include "kmeff/stats.h"

namespace kmeff::analysis {

struct ScalarField {
  int dim = 1;
  std::function<double(std::span<const double>)> eval;
  std::string label;
};

/// Sup-norm ball (a cube) of the given radius.
struct Box {
  std::vector<double> center;
  double radius = 1.0;
};

/// lambda({x in B : |f(x)| < eps}) / lambda(B) by uniform Monte Carlo, with a
/// 3-sigma binomial half-width. Needs eps > 0 and n_samples >= 1000.
stats::Estimate sublevel_measure(const ScalarField& f, const Box& box, double eps,
                                 std::size_t n_samples, Rng& rng);

/// max over sub-balls B' of B (B itself plus `subball_count` random ones) and
/// eps in the grid of  measure(B'^{f,eps}) * (||f||_{B'} / eps)^alpha.
/// Each sub-ball uses `samples_per_ball` uniform points; the same points give
/// the sup-norm estimate. Throws DegenerateInput when f is numerically zero
/// on B.
double good_constant_estimate(const ScalarField& f, const Box& box, double alpha,
                              std::span<const double> eps_grid, int subball_count, Rng& rng,
                              std::size_t samples_per_ball = 20000);

/// Matrix-coefficient families g -> <g e_i, e_j> on SO(n).
enum class CoefficientFamily {
  kDiagonal,     // <g e1, e1>  (cos theta on SO(2))
  kOffDiagonal,  // <g e1, e2>  (sin theta on SO(2))
};

CoefficientFamily parse_coefficient_family(const std::string& name);

struct SublevelPoint {
  double eps = 0.0;
  stats::Estimate measure;
  bool used_in_fit = false;
};

struct SublevelFit {
  double kappa_hat = 0.0;  // exp(intercept)
  double slope_hat = 0.0;  // d log(measure) / d log(eps)
  std::vector<SublevelPoint> points;
};

/// Haar measure of {k in SO(n) : |coefficient(k)| < eps} on each grid point,
/// then a least-squares fit of log(measure) against log(eps). Points with
/// eps >= sup|f| or zero measure are excluded. The grid must span at least
/// three decades. Throws GridTooSmall when fewer than two points survive.
SublevelFit compact_group_sublevel_fit(int n, CoefficientFamily family,
                                       std::span<const double> eps_grid, std::size_t n_samples,
                                       Rng& rng);

/// Smallest j <= max_order such that the j-th derivative of f at `point` is
/// numerically nonzero, estimated by Richardson-extrapolated central
/// differences. Returns max_order + 1 when no such j is detected.
int estimate_order(const std::function<double(double)>& f, double point, int max_order = 8);

}  // namespace kmeff::analysis
