#include "kmeff/linalg.h"

#include <cmath>
#include <string>

#include "kmeff/errors.h"

namespace kmeff::linalg {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidDimension(std::string(what) + ": expected a non-empty square matrix, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Denman-Beavers iteration for the principal square root.
Matrix sqrtm(const Matrix& a) {
  const auto n = a.rows();
  Matrix y = a;
  Matrix z = Matrix::Identity(n, n);
  for (int it = 0; it < 100; ++it) {
    const Matrix y_inv = y.inverse();
    const Matrix z_inv = z.inverse();
    Matrix y_next = 0.5 * (y + z_inv);
    z = 0.5 * (z + y_inv);
    const double change = (y_next - y).norm();
    y = std::move(y_next);
    if (change <= 1e-15 * y.norm()) break;
  }
  return y;
}

}  // namespace

Subspace Subspace::FromOrthonormal(Matrix basis) {
  if (basis.cols() == 0 || basis.rows() < basis.cols()) {
    throw InvalidDimension("Subspace: basis must have 1 <= l <= ambient columns");
  }
  const Matrix gram = basis.transpose() * basis;
  const double dev = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-10)) {
    throw InvalidArgument("Subspace: basis is not orthonormal (deviation " + std::to_string(dev) +
                          ")");
  }
  return Subspace(std::move(basis));
}

Subspace Subspace::Span(const Matrix& vectors) {
  if (vectors.cols() == 0 || vectors.rows() < vectors.cols()) {
    throw InvalidDimension("Subspace::Span: need 1 <= l <= ambient vectors");
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(vectors);
  if (qr.rank() < vectors.cols()) {
    throw DegenerateInput("Subspace::Span: vectors are linearly dependent");
  }
  Eigen::HouseholderQR<Matrix> hqr(vectors);
  Matrix q = hqr.householderQ() * Matrix::Identity(vectors.rows(), vectors.cols());
  return Subspace(std::move(q));
}

Subspace Subspace::Transformed(const Matrix& map) const { return Span(map * basis_); }

Matrix haar_orthogonal(int n, Rng& rng) {
  if (n < 1) throw InvalidDimension("haar_orthogonal: n must be >= 1");
  Matrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = standard_normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

Matrix mat_exp(const LieElement& x) {
  require_square(x, "mat_exp");
  require_finite(x, "mat_exp");
  const auto n = x.rows();
  const double norm1 = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Matrix a = x / std::ldexp(1.0, squarings);

  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  require_finite(result, "mat_exp result");
  return result;
}

LieElement log_one_plus(const Matrix& y_in) {
  require_square(y_in, "log_one_plus");
  require_finite(y_in, "log_one_plus");
  const auto n = y_in.rows();
  const double dist = operator_norm(y_in);
  if (!(dist < 1.0)) {
    throw OutOfDomain("matrix logarithm: ||M - I||_op = " + std::to_string(dist) +
                      " is outside the series domain (< 1)");
  }

  // Inverse scaling: take square roots until the offset is small.
  Matrix y = y_in;
  int roots = 0;
  while (operator_norm(y) > 0.25 && roots < 60) {
    y = sqrtm(Matrix::Identity(n, n) + y) - Matrix::Identity(n, n);
    ++roots;
  }

  Matrix sum = Matrix::Zero(n, n);
  Matrix power = y;
  for (int k = 1; k <= 400; ++k) {
    const Matrix term = power / static_cast<double>(k);
    if (k % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
    const double t = term.cwiseAbs().maxCoeff();
    if (t == 0.0 || t <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    power = power * y;
  }
  sum *= std::ldexp(1.0, roots);
  require_finite(sum, "matrix logarithm result");
  return sum;
}

LieElement mat_log(const Matrix& m) {
  require_square(m, "mat_log");
  return log_one_plus(m - Matrix::Identity(m.rows(), m.cols()));
}

std::vector<std::vector<int>> index_subsets(int n, int l) {
  std::vector<std::vector<int>> out;
  if (l < 0 || l > n) return out;
  std::vector<int> cur(l);
  for (int i = 0; i < l; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = l - 1;
    while (i >= 0 && cur[i] == n - l + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < l; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

Matrix wedge_power(const Matrix& m, int l) {
  require_square(m, "wedge_power");
  const int n = static_cast<int>(m.rows());
  if (l < 1 || l > n) {
    throw InvalidArgument("wedge_power: need 1 <= l <= n, got l = " + std::to_string(l));
  }
  const auto subsets = index_subsets(n, l);
  const auto dim = static_cast<Eigen::Index>(subsets.size());
  Matrix out(dim, dim);
  Matrix minor(l, l);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) minor(i, j) = m(subsets[a][i], subsets[b][j]);
      }
      out(a, b) = minor.determinant();
    }
  }
  return out;
}

double min_singular_ratio(const Matrix& projection, const Subspace& w) {
  require_square(projection, "min_singular_ratio");
  if (projection.rows() != w.ambient_dim()) {
    throw InvalidDimension("min_singular_ratio: projection and subspace dimensions differ");
  }
  const double scale = std::max(1.0, projection.cwiseAbs().maxCoeff());
  const double idem = (projection * projection - projection).cwiseAbs().maxCoeff();
  if (!(idem <= 1e-10 * scale)) {
    throw InvalidArgument("min_singular_ratio: P is not idempotent (||P^2 - P||_max = " +
                          std::to_string(idem) + ")");
  }
  const Vector sv = singular_values(projection * w.basis());
  return sv.minCoeff();
}

double hadamard_bound(const Matrix& a) {
  require_square(a, "hadamard_bound");
  double bound = 1.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) bound *= a.col(j).norm();
  return bound;
}

Vector singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double frobenius_norm(const Matrix& m) { return m.norm(); }

double condition_number(const Matrix& m) {
  const Vector sv = singular_values(m);
  return sv(0) / sv(sv.size() - 1);
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

}  // namespace kmeff::linalg
