#include "kmeff/slgroup.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kmeff/errors.h"
#include "kmeff/rootdata.h"

namespace kmeff::slgroup {

namespace {

Matrix unit(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

void require_close(double closed, double numeric, const char* what) {
  if (std::abs(closed - numeric) > 1e-8 * std::max(1.0, std::abs(closed))) {
    throw std::logic_error(std::string("expanding_element: closed-form ") + what +
                           " disagrees with the numerical operator norm");
  }
}

// vec(C N C^-1) = (C^-T kron C) vec(N), column-major vec.
Matrix conjugation_form(const Matrix& c, const Matrix& c_inv) {
  const Eigen::Index n = c.rows();
  const Matrix left = c_inv.transpose();
  Matrix out(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.block(i * n, j * n, n, n) = left(i, j) * c;
    }
  }
  return out;
}

IntMatrix unvec(const std::vector<std::int64_t>& v, int n) {
  IntMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = v[static_cast<std::size_t>(j * n + i)];
  }
  return m;
}

bool unit_determinant(const IntMatrix& gamma) {
  // Cheap rejection first; the exact test settles the rest.
  if (std::abs(gamma.cast<double>().determinant() - 1.0) > 0.5) return false;
  return lattice::has_unit_determinant(gamma);
}

}  // namespace

SemisimpleParams expanding_element(int n, double lambda, double x0) {
  if (n < 2) throw InvalidDimension("expanding_element: need n >= 2");
  if (!(x0 > 0.0 && x0 < 1.0)) throw InvalidArgument("expanding_element: need 0 < x0 < 1");
  SemisimpleParams sp;
  sp.n = n;
  sp.x0 = x0;
  sp.lambda0 = 1.0 / x0;
  if (!(lambda * (1.0 + 1e-12) >= sp.lambda0)) {
    throw DegenerateInput("expanding_element: lambda < 1/x0 gives n0 = 0");
  }
  sp.n0 = static_cast<int>(std::floor(std::log(lambda) / std::log(sp.lambda0) + 1e-9));

  sp.s_lambda = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    sp.s_lambda(i, i) = std::pow(x0, sp.n0 * (0.5 * (n - 1) - i));
  }
  const int ht_sum = rootdata::group_constants(n).ht_sum;
  sp.ad_norm = std::pow(sp.lambda0, sp.n0 * ht_sum);
  sp.ad_inv_norm_on_uminus = std::pow(sp.lambda0, -sp.n0);

  const Matrix ad = ad_operator(sp.s_lambda);
  require_close(sp.ad_norm, linalg::operator_norm(ad), "||Ad(s)||");
  const int dim_u = n * (n - 1) / 2;
  const Matrix ad_inv = ad_operator(sp.s_lambda.inverse());
  require_close(sp.ad_inv_norm_on_uminus,
                linalg::operator_norm(ad_inv.topLeftCorner(dim_u, dim_u)), "||Ad(s^-1)|u-||");
  return sp;
}

std::vector<Matrix> sl_basis(int n) {
  if (n < 2) throw InvalidDimension("sl_basis: need n >= 2");
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) basis.push_back(unit(n, i, j));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) basis.push_back(unit(n, i, j));
  }
  for (int k = 1; k < n; ++k) {
    Matrix h = Matrix::Zero(n, n);
    for (int i = 0; i < k; ++i) h(i, i) = 1.0;
    h(k, k) = -static_cast<double>(k);
    basis.push_back(h / std::sqrt(static_cast<double>(k * (k + 1))));
  }
  return basis;
}

Vector sl_coordinates(const Matrix& x) {
  if (x.rows() != x.cols()) throw InvalidDimension("sl_coordinates: square matrix expected");
  const auto basis = sl_basis(static_cast<int>(x.rows()));
  Vector c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) c(static_cast<Eigen::Index>(a)) = basis[a].cwiseProduct(x).sum();
  return c;
}

Matrix sl_matrix(const Vector& coords, int n) {
  const auto basis = sl_basis(n);
  if (coords.size() != static_cast<Eigen::Index>(basis.size())) {
    throw InvalidDimension("sl_matrix: expected n^2 - 1 coordinates");
  }
  Matrix x = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < basis.size(); ++a) x += coords(static_cast<Eigen::Index>(a)) * basis[a];
  return x;
}

Matrix ad_operator(const Matrix& s) {
  if (s.rows() != s.cols()) throw InvalidDimension("ad_operator: square matrix expected");
  linalg::require_finite(s, "ad_operator argument");
  // An LU rank test would reject torus elements with a wide spread of
  // entries, which are perfectly invertible.
  const Eigen::PartialPivLU<Matrix> lu(s);
  if (!(std::abs(lu.determinant()) > 0.0)) throw InvalidArgument("ad_operator: s is singular");
  const Matrix s_inv = lu.inverse();
  if (!s_inv.allFinite()) throw InvalidArgument("ad_operator: s is numerically singular");
  const auto basis = sl_basis(static_cast<int>(s.rows()));
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Matrix ad(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const Matrix image = s * basis[b] * s_inv;
    for (Eigen::Index a = 0; a < dim; ++a) ad(a, b) = basis[a].cwiseProduct(image).sum();
  }
  return ad;
}

grassmann::SplitSpace uminus_splitting(int n) {
  if (n < 2) throw InvalidDimension("uminus_splitting: need n >= 2");
  const int dim = n * n - 1;
  const int dim_u = n * (n - 1) / 2;
  Matrix basis = Matrix::Zero(dim, dim_u);
  basis.topRows(dim_u).setIdentity();
  return grassmann::SplitSpace::Orthogonal(linalg::Subspace::FromOrthonormal(basis));
}

Matrix sample_mu_s(const SemisimpleParams& sp, Rng& rng) {
  const Matrix k1 = linalg::haar_orthogonal(sp.n, rng);
  const Matrix k2 = linalg::haar_orthogonal(sp.n, rng);
  return k1 * sp.s_lambda * k2;
}

RadiusParams radius_params(const SemisimpleParams& sp) {
  if (!(sp.ad_norm >= 1.0)) throw InvalidArgument("radius_params: ad_norm must be >= 1");
  RadiusParams rp;
  rp.R = kZassenhausRadius;
  rp.rho = rp.R / sp.ad_norm;
  return rp;
}

DiscreteGroupModel::DiscreteGroupModel(Matrix conjugator, std::int64_t cap)
    : conjugator_(std::move(conjugator)), cap_(cap) {
  if (conjugator_.rows() != conjugator_.cols() || conjugator_.rows() < 2) {
    throw InvalidDimension("DiscreteGroupModel: need a square conjugator with n >= 2");
  }
  linalg::require_finite(conjugator_, "conjugator");
  const double det = conjugator_.determinant();
  if (!(std::abs(det - 1.0) <= 1e-10)) {
    throw InvalidArgument("DiscreteGroupModel: conjugator must have det 1 (got " +
                          std::to_string(det) + ")");
  }
  if (cap_ < 1) throw InvalidArgument("DiscreteGroupModel: enumeration cap must be >= 1");
  reduced_ = lattice::reduce_conjugator(conjugator_);
}

std::int64_t DiscreteGroupModel::entry_bound(double radius) const {
  const double bound =
      std::ceil(linalg::condition_number(reduced_.r) * radius * std::exp(radius) + 0.5);
  if (bound > static_cast<double>(cap_)) {
    const double clipped = std::min(bound, 9.0e18);
    throw EnumerationCapExceeded(static_cast<std::int64_t>(clipped), cap_);
  }
  return static_cast<std::int64_t>(bound);
}

std::vector<IntMatrix> lattice_candidates(const DiscreteGroupModel& model, double r) {
  if (!(r > 0.0)) throw InvalidArgument("lattice_candidates: r must be positive");
  const std::int64_t bound = model.entry_bound(r);
  const int n = model.n();
  const auto& red = model.reduced();
  const Matrix c_inv = red.r.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  const IntMatrix id = IntMatrix::Identity(n, n);

  std::vector<IntMatrix> out;
  lattice::enumerate_short_vectors(
      conjugation_form(red.r, c_inv), std::expm1(r) * (1.0 + 1e-12), bound,
      [&](const std::vector<std::int64_t>& v, double radius) {
        const IntMatrix gamma = id + unvec(v, n);
        if (unit_determinant(gamma)) out.push_back(red.u * gamma * red.u_inv);
        return radius;
      });
  std::sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) {
    const IntMatrix at = a.transpose();
    const IntMatrix bt = b.transpose();
    return std::lexicographical_compare(at.data(), at.data() + at.size(), bt.data(),
                                        bt.data() + bt.size());
  });
  return out;
}

double discreteness_radius(const DiscreteGroupModel& model, const RadiusParams& rp) {
  if (!(rp.rho > 0.0 && rp.rho <= rp.R && rp.R <= 0.5)) {
    throw InvalidArgument("discreteness_radius: need 0 < rho <= R <= 0.5");
  }
  const std::int64_t bound = model.entry_bound(rp.rho);
  const int n = model.n();
  const Matrix& c = model.reduced().r;
  const Matrix c_inv = c.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  const IntMatrix id = IntMatrix::Identity(n, n);

  double best = rp.rho;
  lattice::enumerate_short_vectors(
      conjugation_form(c, c_inv), std::expm1(rp.rho) * (1.0 + 1e-12), bound,
      [&](const std::vector<std::int64_t>& v, double radius) {
        const IntMatrix nil = unvec(v, n);
        if (!unit_determinant(id + nil)) return radius;
        const Matrix y = c * nil.cast<double>() * c_inv;
        if (!(linalg::frobenius_norm(y) < 1.0)) return radius;
        const double ell = linalg::frobenius_norm(linalg::log_one_plus(y));
        if (ell < best) {
          best = ell;
          // Anything shorter has ||Y||_F <= e^ell - 1.
          return std::min(radius, std::expm1(ell) * (1.0 + 1e-9));
        }
        return radius;
      });
  return best;
}

Matrix normalized_conjugator(const Matrix& g) {
  Matrix r = lattice::reduce_conjugator(g).r;
  const double det = r.diagonal().prod();
  if (!(det > 0.0)) throw InvalidArgument("normalized_conjugator: singular conjugator");
  return r / std::pow(det, 1.0 / static_cast<double>(r.rows()));
}

}  // namespace kmeff::slgroup
