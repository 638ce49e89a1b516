#pragma once

#include <cstddef>
#include <span>

namespace kmeff::stats {

/// Point estimate with a 3-sigma CLT half-width.
struct Estimate {
  double value = 0.0;
  double half_width = 0.0;

  double lower() const { return value - half_width; }
  double upper() const { return value + half_width; }
};

/// Sample mean with 3 * (sample sd) / sqrt(n). Summation runs in index order.
Estimate mean_estimate(std::span<const double> samples);

/// hits / n with the binomial 3-sigma half-width.
Estimate fraction_estimate(std::size_t hits, std::size_t n);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points with
/// distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace kmeff::stats
