#include "kmeff/analysis.h"

#include <algorithm>
#include <cmath>

#include "kmeff/errors.h"
#include "kmeff/linalg.h"

namespace kmeff::analysis {

namespace {

void sample_in_box(const Box& box, Rng& rng, std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = box.center[i] + box.radius * (2.0 * uniform01(rng) - 1.0);
  }
}

void check_box(const ScalarField& f, const Box& box) {
  if (static_cast<int>(box.center.size()) != f.dim) {
    throw InvalidDimension("box dimension does not match the field");
  }
  if (!(box.radius > 0.0)) throw InvalidArgument("box radius must be positive");
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double central_derivative(const std::function<double(double)>& f, double x, int j, double h) {
  double acc = 0.0;
  for (int k = 0; k <= j; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial(j, k) * f(x + (0.5 * j - k) * h);
  }
  return acc / std::pow(h, j);
}

}  // namespace

stats::Estimate sublevel_measure(const ScalarField& f, const Box& box, double eps,
                                 std::size_t n_samples, Rng& rng) {
  check_box(f, box);
  if (!(eps > 0.0)) throw InvalidArgument("sublevel_measure: eps must be positive");
  if (n_samples < 1000) throw InvalidArgument("sublevel_measure: need at least 1000 samples");
  std::vector<double> x(f.dim);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    sample_in_box(box, rng, x);
    if (std::abs(f.eval(x)) < eps) ++hits;
  }
  return stats::fraction_estimate(hits, n_samples);
}

double good_constant_estimate(const ScalarField& f, const Box& box, double alpha,
                              std::span<const double> eps_grid, int subball_count, Rng& rng,
                              std::size_t samples_per_ball) {
  check_box(f, box);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("good_constant_estimate: alpha must lie in (0, 1]");
  }
  if (eps_grid.empty()) throw InvalidArgument("good_constant_estimate: empty eps grid");
  if (subball_count < 0) throw InvalidArgument("good_constant_estimate: negative sub-ball count");

  std::vector<Box> balls{box};
  for (int b = 0; b < subball_count; ++b) {
    Box sub;
    sub.radius = box.radius * uniform(rng, 0.05, 1.0);
    sub.center.resize(box.center.size());
    for (std::size_t i = 0; i < sub.center.size(); ++i) {
      sub.center[i] = box.center[i] + (box.radius - sub.radius) * (2.0 * uniform01(rng) - 1.0);
    }
    balls.push_back(std::move(sub));
  }

  std::vector<double> x(f.dim);
  std::vector<double> values(samples_per_ball);
  double c_hat = 0.0;
  for (std::size_t b = 0; b < balls.size(); ++b) {
    double sup = 0.0;
    for (std::size_t i = 0; i < samples_per_ball; ++i) {
      sample_in_box(balls[b], rng, x);
      values[i] = std::abs(f.eval(x));
      sup = std::max(sup, values[i]);
    }
    if (b == 0 && sup < 1e-14) {
      throw DegenerateInput("good_constant_estimate: f is numerically zero on the box");
    }
    if (sup < 1e-14) continue;
    for (double eps : eps_grid) {
      const auto hits = std::count_if(values.begin(), values.end(),
                                      [eps](double v) { return v < eps; });
      const double measure = static_cast<double>(hits) / static_cast<double>(samples_per_ball);
      c_hat = std::max(c_hat, measure * std::pow(sup / eps, alpha));
    }
  }
  return c_hat;
}

CoefficientFamily parse_coefficient_family(const std::string& name) {
  if (name == "diagonal" || name == "cos") return CoefficientFamily::kDiagonal;
  if (name == "offdiagonal" || name == "sin") return CoefficientFamily::kOffDiagonal;
  throw InvalidArgument("unknown matrix-coefficient family '" + name + "'");
}

SublevelFit compact_group_sublevel_fit(int n, CoefficientFamily family,
                                       std::span<const double> eps_grid, std::size_t n_samples,
                                       Rng& rng) {
  if (n < 2) throw InvalidDimension("compact_group_sublevel_fit: need n >= 2");
  if (eps_grid.empty()) throw InvalidArgument("compact_group_sublevel_fit: empty eps grid");
  const auto [lo, hi] = std::minmax_element(eps_grid.begin(), eps_grid.end());
  if (!(*lo > 0.0) || *hi / *lo < 1e3 * (1.0 - 1e-12)) {
    throw InvalidArgument("compact_group_sublevel_fit: eps grid must span >= 3 decades");
  }

  std::vector<double> values(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const linalg::Matrix k = linalg::haar_orthogonal(n, rng);
    values[i] = std::abs(family == CoefficientFamily::kDiagonal ? k(0, 0) : k(1, 0));
  }
  // Both families are coordinates of a unit column, so sup |f| = 1.
  constexpr double kSup = 1.0;

  SublevelFit out;
  std::vector<double> xs, ys;
  for (double eps : eps_grid) {
    const auto hits = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [eps](double v) { return v < eps; }));
    SublevelPoint pt{eps, stats::fraction_estimate(hits, n_samples), false};
    if (eps < kSup && hits > 0) {
      pt.used_in_fit = true;
      xs.push_back(std::log(eps));
      ys.push_back(std::log(pt.measure.value));
    }
    out.points.push_back(pt);
  }
  if (xs.size() < 2) {
    throw GridTooSmall("compact_group_sublevel_fit: fewer than two nonzero sublevel measures");
  }
  const stats::LineFit fit = stats::least_squares(xs, ys);
  out.slope_hat = fit.slope;
  out.kappa_hat = std::exp(fit.intercept);
  return out;
}

int estimate_order(const std::function<double(double)>& f, double point, int max_order) {
  if (max_order < 0 || max_order > 8) {
    throw InvalidArgument("estimate_order: max_order must lie in [0, 8]");
  }
  double scale = 0.0;
  for (int k = -8; k <= 8; ++k) scale = std::max(scale, std::abs(f(point + 0.1 * k)));
  scale = std::max(scale, 1e-300);

  double factorial = 1.0;
  for (int j = 0; j <= max_order; ++j) {
    if (j > 0) factorial *= j;
    double value;
    if (j == 0) {
      value = f(point);
    } else {
      // Higher differences need wider steps to stay above rounding noise.
      const double h = j <= 4 ? 0.1 : 0.25;
      const double d1 = central_derivative(f, point, j, h);
      const double d2 = central_derivative(f, point, j, h / 2);
      const double d3 = central_derivative(f, point, j, h / 4);
      const double r1 = (4.0 * d2 - d1) / 3.0;
      const double r2 = (4.0 * d3 - d2) / 3.0;
      value = (16.0 * r2 - r1) / 15.0;
    }
    if (std::abs(value) > 1e-6 * factorial * scale) return j;
  }
  return max_order + 1;
}

}  // namespace kmeff::analysis
