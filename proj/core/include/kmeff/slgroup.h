#pragma once

// G = SL(n, R) with the lattice SL(n, Z): expanding torus elements, adjoint
// norms, the bi-K-invariant measure mu_s = eta_K * delta_s * eta_K, and the
// discreteness radius of conjugates g SL(n, Z) g^-1.

#include <cstdint>
#include <vector>

#include "kmeff/grassmann.h"
#include "kmeff/lattice.h"
#include "kmeff/linalg.h"
#include "kmeff/random.h"

namespace kmeff::slgroup {

using linalg::Matrix;
using linalg::Vector;
using lattice::IntMatrix;

/// Radius of the identity neighbourhood on which the logarithm is used.
inline constexpr double kZassenhausRadius = 0.34;

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000'000;

struct SemisimpleParams {
  int n = 0;
  double x0 = 0.0;
  double lambda0 = 0.0;  // 1 / x0
  int n0 = 0;
  Matrix s_lambda;  // diagonal, det 1, entries increasing by factors lambda0^n0
  double ad_norm = 0.0;
  double ad_inv_norm_on_uminus = 0.0;
};

struct RadiusParams {
  double R = kZassenhausRadius;
  double rho = 0.0;
};

/// s0 = diag(d) with d_i / d_{i+1} = x0 and det 1; s_lambda = s0^n0 with
/// n0 = floor(ln lambda / ln lambda0). The closed-form norms are checked
/// against the numerical operator norms.
SemisimpleParams expanding_element(int n, double lambda, double x0);

/// Orthonormal basis of sl(n) under the Frobenius inner product, in the order
/// u^- (E_ij, i > j), u^+ (E_ij, i < j), then traceless diagonal matrices.
std::vector<Matrix> sl_basis(int n);

Vector sl_coordinates(const Matrix& x);
Matrix sl_matrix(const Vector& coords, int n);

/// Matrix of X -> s X s^-1 in sl_basis(n).
Matrix ad_operator(const Matrix& s);

/// sl(n) = u^- + b in sl_basis coordinates; b is the orthogonal complement of
/// u^-, so the projection onto u^- is orthogonal.
grassmann::SplitSpace uminus_splitting(int n);

/// k1 * s_lambda * k2 with independent Haar k1, k2 in SO(n).
Matrix sample_mu_s(const SemisimpleParams& sp, Rng& rng);

/// R = 0.34, rho = R / ad_norm.
RadiusParams radius_params(const SemisimpleParams& sp);

/// Gamma^g = g SL(n, Z) g^-1. The conjugator is LLL-reduced once at
/// construction; the reduction leaves the group unchanged.
class DiscreteGroupModel {
 public:
  explicit DiscreteGroupModel(Matrix conjugator, std::int64_t cap = kDefaultEnumerationCap);

  int n() const { return static_cast<int>(conjugator_.rows()); }
  const Matrix& conjugator() const { return conjugator_; }
  const lattice::ReducedBasis& reduced() const { return reduced_; }
  std::int64_t cap() const { return cap_; }

  /// ceil(cond2(r) * radius * e^radius + 0.5) for the reduced conjugator r;
  /// throws EnumerationCapExceeded above the cap.
  std::int64_t entry_bound(double radius) const;

 private:
  Matrix conjugator_;
  lattice::ReducedBasis reduced_;
  std::int64_t cap_;
};

/// Every gamma in SL(n, Z) \ {I} with ||g gamma g^-1 - I||_F <= e^r - 1,
/// which contains every gamma with ||log(g gamma g^-1)||_F <= r. Sorted
/// lexicographically by entries.
std::vector<IntMatrix> lattice_candidates(const DiscreteGroupModel& model, double r);

/// min ||log(g gamma g^-1)||_F over gamma in SL(n, Z) \ {I}, capped at rho.
double discreteness_radius(const DiscreteGroupModel& model, const RadiusParams& rp);

/// The reduced triangular factor r of g (g u = q r), rescaled to det 1.
/// r SL(n, Z) and q^-1 g SL(n, Z) are the same coset, so the discreteness
/// radius is unchanged; entries stay bounded along long random products.
Matrix normalized_conjugator(const Matrix& g);

}  // namespace kmeff::slgroup
