#pragma once

// Projections of subspaces: the wedge quantity q(W), the lower bound
// inf ||Pw||/||w|| >= q(W), and the contraction inequality for bijections
// preserving a splitting V = U + U'.

#include "kmeff/linalg.h"
#include "kmeff/random.h"

namespace kmeff::grassmann {

using linalg::Matrix;
using linalg::Subspace;

/// V = U + U' with the projection onto U along U' and its complement.
class SplitSpace {
 public:
  /// U' = orthogonal complement of U, so P is an orthogonal projection.
  static SplitSpace Orthogonal(const Subspace& u);

  /// General direct sum; throws InvalidArgument if U + U' is not all of V.
  static SplitSpace Oblique(const Subspace& u, const Subspace& u_prime);

  int ambient_dim() const { return static_cast<int>(proj_u_.rows()); }
  int dim_u() const { return dim_u_; }
  const Matrix& proj_u() const { return proj_u_; }
  const Matrix& proj_u_prime() const { return proj_u_prime_; }
  const Subspace& u() const { return u_; }

 private:
  SplitSpace(Subspace u, Matrix proj_u);
  Subspace u_;
  int dim_u_;
  Matrix proj_u_;
  Matrix proj_u_prime_;
};

/// ||P w_1 ^ ... ^ P w_l|| in the orthonormal wedge basis, for the stored
/// orthonormal basis of W, refined by the max over `refine_samples` random
/// unit l-tuples in W. Throws InvalidArgument when l > dim U or the ambient
/// dimensions differ.
double q_of_subspace(const SplitSpace& ss, const Subspace& w, Rng& rng,
                     int refine_samples = 1000);

struct BoundCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
};

/// min_singular_ratio(P, W) >= q(W) - 1e-10.
BoundCheck check_projection_bound(const SplitSpace& ss, const Subspace& w, Rng& rng,
                                  int refine_samples = 1000);

/// inf_W ||Lw||/||w|| >= (inf_U ||Lu||/||u||) * (inf_W ||Pw||/||w||), all
/// infima by SVD. L must commute with P (within 1e-10 relative to ||L||);
/// otherwise throws InvalidArgument.
BoundCheck check_bijection_contraction(const Matrix& l, const SplitSpace& ss, const Subspace& w);

/// Uniformly random l-dimensional subspace of R^n.
Subspace random_subspace(int n, int l, Rng& rng);

}  // namespace kmeff::grassmann
