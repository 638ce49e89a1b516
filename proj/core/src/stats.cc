#include "kmeff/stats.h"

#include <cmath>

#include "kmeff/errors.h"

namespace kmeff::stats {

Estimate mean_estimate(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) throw InvalidArgument("mean_estimate: no samples");
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, 3.0 * sd / std::sqrt(static_cast<double>(n))};
}

Estimate fraction_estimate(std::size_t hits, std::size_t n) {
  if (n == 0) throw InvalidArgument("fraction_estimate: no samples");
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("least_squares: need at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("least_squares: x values coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  return fit;
}

}  // namespace kmeff::stats
