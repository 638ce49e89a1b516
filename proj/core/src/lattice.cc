#include "kmeff/lattice.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "kmeff/errors.h"

namespace kmeff::lattice {

namespace {

constexpr double kLovasz = 0.99;

struct GramSchmidt {
  Matrix mu;
  linalg::Vector norms2;
};

GramSchmidt gram_schmidt(const Matrix& b) {
  const Eigen::Index n = b.cols();
  GramSchmidt gs{Matrix::Zero(n, n), linalg::Vector::Zero(n)};
  Matrix star = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      gs.mu(i, j) = b.col(i).dot(star.col(j)) / gs.norms2(j);
      star.col(i) -= gs.mu(i, j) * star.col(j);
    }
    gs.norms2(i) = star.col(i).squaredNorm();
  }
  return gs;
}

void lll_columns(Matrix& b, IntMatrix& u) {
  const Eigen::Index n = b.cols();
  GramSchmidt gs = gram_schmidt(b);
  Eigen::Index k = 1;
  for (int iter = 0; k < n && iter < 100000; ++iter) {
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      const double q = std::round(gs.mu(k, j));
      if (q == 0.0) continue;
      b.col(k) -= q * b.col(j);
      u.col(k) -= static_cast<std::int64_t>(q) * u.col(j);
      for (Eigen::Index i = 0; i < j; ++i) gs.mu(k, i) -= q * gs.mu(j, i);
      gs.mu(k, j) -= q;
    }
    const double m = gs.mu(k, k - 1);
    if (gs.norms2(k) >= (kLovasz - m * m) * gs.norms2(k - 1)) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      u.col(k).swap(u.col(k - 1));
      gs = gram_schmidt(b);
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
}

IntMatrix integer_inverse(const IntMatrix& u) {
  const Matrix inv = u.cast<double>().inverse();
  IntMatrix out = inv.array().round().cast<std::int64_t>().matrix();
  if (u * out != IntMatrix::Identity(u.rows(), u.cols())) {
    throw InvalidArgument("reduce_conjugator: reduction matrix is not unimodular");
  }
  return out;
}

}  // namespace

ReducedBasis reduce_conjugator(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() < 2) {
    throw InvalidDimension("reduce_conjugator: need a square matrix with n >= 2");
  }
  linalg::require_finite(g, "conjugator");
  const Eigen::Index n = g.rows();
  Matrix b = g;
  IntMatrix u = IntMatrix::Identity(n, n);
  lll_columns(b, u);
  if (u.cast<double>().determinant() < 0) {
    b.col(0) *= -1.0;
    u.col(0) *= -1;
  }

  Eigen::HouseholderQR<Matrix> qr(b);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i, i) < 0) r.row(i) *= -1.0;
  }
  return ReducedBasis{std::move(r), u, integer_inverse(u)};
}

bool has_unit_determinant(const IntMatrix& m) {
  using boost::multiprecision::cpp_int;
  const Eigen::Index n = m.rows();
  std::vector<std::vector<cpp_int>> a(n, std::vector<cpp_int>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a[i][j] = m(i, j);
  }
  // Bareiss elimination; every division is exact.
  int sign = 1;
  cpp_int prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return false;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1] == 1;
}

void enumerate_short_vectors(
    const Matrix& b, double radius, std::int64_t cap,
    const std::function<double(const std::vector<std::int64_t>&, double)>& visit) {
  const Eigen::Index m = b.cols();
  if (b.rows() != m) throw InvalidDimension("enumerate_short_vectors: square basis expected");

  // Short columns go first so that the outer levels of the search tree carry
  // the large diagonal entries and stay narrow.
  std::vector<Eigen::Index> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&b](Eigen::Index x, Eigen::Index y) {
    return b.col(x).squaredNorm() < b.col(y).squaredNorm();
  });
  Matrix bp(m, m);
  for (Eigen::Index j = 0; j < m; ++j) bp.col(j) = b.col(perm[j]);
  Eigen::HouseholderQR<Matrix> qr(bp);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(std::abs(r(i, i)) > 0.0)) throw DegenerateInput("enumerate_short_vectors: singular basis");
  }

  std::vector<std::int64_t> v(m, 0);
  std::vector<std::int64_t> original(m, 0);
  double r2 = radius * radius;

  std::function<void(Eigen::Index, double)> descend = [&](Eigen::Index i, double partial) {
    double tail = 0.0;
    for (Eigen::Index j = i + 1; j < m; ++j) tail += r(i, j) * static_cast<double>(v[j]);
    const double center = -tail / r(i, i);
    const double rii = std::abs(r(i, i));
    const double half_width = std::sqrt(std::max(r2 - partial, 0.0)) / rii;
    if (half_width > static_cast<double>(cap)) {
      throw EnumerationCapExceeded(static_cast<std::int64_t>(std::ceil(std::min(half_width, 9e18))),
                                   cap);
    }
    // Zigzag outward from the nearest integer; distances to the center grow
    // monotonically on each side, so a side closes at its first miss.
    const auto c0 = static_cast<std::int64_t>(std::llround(center));
    bool open[2] = {true, true};
    for (std::int64_t k = 0; open[0] || open[1]; ++k) {
      for (int side = 0; side < 2; ++side) {
        if (!open[side] || (k == 0 && side == 1)) continue;
        const std::int64_t x = side == 0 ? c0 + k : c0 - k;
        const double d = (static_cast<double>(x) - center) * rii;
        const double total = partial + d * d;
        if (total > r2) {
          open[side] = false;
          if (k == 0) open[1] = false;
          continue;
        }
        v[i] = x;
        if (i == 0) {
          if (std::any_of(v.begin(), v.end(), [](std::int64_t e) { return e != 0; })) {
            for (Eigen::Index j = 0; j < m; ++j) original[perm[j]] = v[j];
            const double next = visit(original, std::sqrt(r2));
            r2 = std::min(r2, next * next);
          }
        } else {
          descend(i - 1, total);
        }
      }
    }
    v[i] = 0;
  };
  descend(m - 1, 0.0);
}

}  // namespace kmeff::lattice
