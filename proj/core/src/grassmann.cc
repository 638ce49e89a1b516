#include "kmeff/grassmann.h"

#include <algorithm>
#include <cmath>

#include "kmeff/errors.h"

namespace kmeff::grassmann {

namespace {

constexpr double kBoundTol = 1e-10;

void require_compatible(const SplitSpace& ss, const Subspace& w) {
  if (w.ambient_dim() != ss.ambient_dim()) {
    throw InvalidDimension("subspace and splitting live in different ambient spaces");
  }
  if (w.dim() > ss.dim_u()) {
    throw InvalidArgument("q(W) needs dim W <= dim U (got " + std::to_string(w.dim()) + " > " +
                          std::to_string(ss.dim_u()) + ")");
  }
}

double min_singular(const Matrix& m) {
  if (m.cols() == 0) return 1.0;
  return linalg::singular_values(m).minCoeff();
}

}  // namespace

SplitSpace::SplitSpace(Subspace u, Matrix proj_u)
    : u_(std::move(u)), dim_u_(u_.dim()), proj_u_(std::move(proj_u)) {
  proj_u_prime_ = Matrix::Identity(proj_u_.rows(), proj_u_.cols()) - proj_u_;
}

SplitSpace SplitSpace::Orthogonal(const Subspace& u) {
  return SplitSpace(u, u.basis() * u.basis().transpose());
}

SplitSpace SplitSpace::Oblique(const Subspace& u, const Subspace& u_prime) {
  const int n = u.ambient_dim();
  if (u_prime.ambient_dim() != n || u.dim() + u_prime.dim() != n) {
    throw InvalidArgument("Oblique: dimensions of U and U' must add up to the ambient dimension");
  }
  Matrix basis(n, n);
  basis << u.basis(), u_prime.basis();
  Eigen::FullPivLU<Matrix> lu(basis);
  if (!lu.isInvertible()) throw InvalidArgument("Oblique: U and U' intersect nontrivially");
  // In the adapted basis the projection keeps the first dim U coordinates.
  Matrix keep = Matrix::Zero(n, n);
  keep.topLeftCorner(u.dim(), u.dim()).setIdentity();
  return SplitSpace(u, basis * keep * lu.inverse());
}

double q_of_subspace(const SplitSpace& ss, const Subspace& w, Rng& rng, int refine_samples) {
  require_compatible(ss, w);
  const int l = w.dim();
  const Matrix pb = ss.proj_u() * w.basis();
  double q = linalg::singular_values(pb).prod();

  // Unit tuples w_i = B c_i with |c_i| = 1; the wedge norm of the images is
  // sqrt(det Gram).
  const Matrix gram0 = pb.transpose() * pb;
  Matrix c(l, l);
  for (int s = 0; s < refine_samples; ++s) {
    for (int j = 0; j < l; ++j) {
      for (int i = 0; i < l; ++i) c(i, j) = standard_normal(rng);
      c.col(j).normalize();
    }
    const double det = (c.transpose() * gram0 * c).determinant();
    q = std::max(q, std::sqrt(std::max(det, 0.0)));
  }
  return q;
}

BoundCheck check_projection_bound(const SplitSpace& ss, const Subspace& w, Rng& rng,
                                  int refine_samples) {
  BoundCheck out;
  out.rhs = q_of_subspace(ss, w, rng, refine_samples);
  out.lhs = linalg::min_singular_ratio(ss.proj_u(), w);
  out.slack = out.lhs - out.rhs;
  out.holds = out.slack >= -kBoundTol;
  return out;
}

BoundCheck check_bijection_contraction(const Matrix& l, const SplitSpace& ss, const Subspace& w) {
  const int n = ss.ambient_dim();
  if (l.rows() != n || l.cols() != n) throw InvalidDimension("L must act on the ambient space");
  const Matrix& p = ss.proj_u();
  const double scale = std::max(1.0, linalg::operator_norm(l));
  if (linalg::operator_norm(p * l - l * p) > kBoundTol * scale) {
    throw InvalidArgument("L does not preserve the splitting U + U'");
  }
  BoundCheck out;
  out.lhs = min_singular(l * w.basis());
  const double mu_u = min_singular(l * ss.u().basis());
  out.rhs = mu_u * linalg::min_singular_ratio(p, w);
  out.slack = out.lhs - out.rhs;
  out.holds = out.slack >= -kBoundTol * scale;
  return out;
}

Subspace random_subspace(int n, int l, Rng& rng) {
  if (l < 1 || l > n) throw InvalidDimension("random_subspace: need 1 <= l <= n");
  Matrix g(n, l);
  for (int j = 0; j < l; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = standard_normal(rng);
  }
  return Subspace::Span(g);
}

}  // namespace kmeff::grassmann
