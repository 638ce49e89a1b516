#pragma once

// Dense small-matrix kernels: exp/log near the identity, Haar sampling on
// SO(n), exterior powers and a few norm inequalities.
//
// Lie algebra elements of sl(n) are stored as plain matrices; the norm on the
// Lie algebra is the Frobenius norm, which is Ad(SO(n))-invariant.

#include <vector>

#include <Eigen/Dense>

#include "kmeff/random.h"

namespace kmeff::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// An element X of sl(n, R). Same storage as Matrix; trace(X) = 0 is only
/// checked where an operation requires it.
using LieElement = Eigen::MatrixXd;

inline constexpr double kExactTol = 1e-12;
inline constexpr double kIterativeTol = 1e-9;
inline constexpr double kSamplingTol = 1e-3;

/// l-dimensional subspace of R^ambient given by an orthonormal basis
/// (columns). The invariant basis^T basis = I holds for every instance.
class Subspace {
 public:
  /// Takes ownership of an already-orthonormal basis; throws InvalidArgument
  /// when basis^T basis deviates from I by more than 1e-10 entrywise.
  static Subspace FromOrthonormal(Matrix basis);

  /// Orthonormalizes the column span of `vectors` (which must have full
  /// column rank).
  static Subspace Span(const Matrix& vectors);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  /// Image under an invertible linear map, re-orthonormalized.
  Subspace Transformed(const Matrix& map) const;

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Haar-distributed element of SO(n): QR of a Gaussian matrix, signs of R's
/// diagonal pushed into Q, then one column negated if det = -1.
Matrix haar_orthogonal(int n, Rng& rng);

/// Matrix exponential by scaling and squaring of the Taylor series.
Matrix mat_exp(const LieElement& x);

/// Principal logarithm. Requires ||M - I||_op < 1; otherwise throws
/// OutOfDomain.
LieElement mat_log(const Matrix& m);

/// log(I + y) for ||y||_op < 1, evaluated without ever forming I + y, so that
/// tiny offsets keep full relative precision.
LieElement log_one_plus(const Matrix& y);

/// l-th exterior power in the lexicographically ordered basis of l-subsets.
/// Entry (I, J) is the minor of `m` with rows I and columns J.
Matrix wedge_power(const Matrix& m, int l);

/// All l-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> index_subsets(int n, int l);

/// inf over unit w in W of ||P w||, i.e. the smallest singular value of
/// P * basis(W). P must be idempotent (within 1e-10).
double min_singular_ratio(const Matrix& projection, const Subspace& w);

/// Product of the Euclidean column norms; bounds |det A| from above.
double hadamard_bound(const Matrix& a);

double operator_norm(const Matrix& m);
double frobenius_norm(const Matrix& m);
double condition_number(const Matrix& m);
Vector singular_values(const Matrix& m);

/// Throws InvalidArgument naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);

}  // namespace kmeff::linalg
