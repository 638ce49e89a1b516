#pragma once

// Integer-lattice helpers for conjugates of SL(n, Z): basis reduction of the
// conjugator and short-vector enumeration in a quadratic form.

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "kmeff/linalg.h"

namespace kmeff::lattice {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using linalg::Matrix;

/// g * u = q * r with u in SL(n, Z) (LLL-reduced columns), q orthogonal and
/// r upper triangular with positive diagonal. Since u normalizes SL(n, Z) and
/// Frobenius norms are invariant under q, r carries everything the
/// discreteness radius of g SL(n, Z) g^-1 depends on.
struct ReducedBasis {
  Matrix r;
  IntMatrix u;
  IntMatrix u_inv;
};

ReducedBasis reduce_conjugator(const Matrix& g);

/// Exact determinant (fraction-free elimination in arbitrary precision).
bool has_unit_determinant(const IntMatrix& m);

/// Calls visit(v, radius) for every nonzero integer vector v with
/// ||b v|| <= radius. The visitor returns the radius to use from then on,
/// which may only shrink. Throws EnumerationCapExceeded if some coordinate
/// range would exceed `cap`.
void enumerate_short_vectors(
    const Matrix& b, double radius, std::int64_t cap,
    const std::function<double(const std::vector<std::int64_t>&, double)>& visit);

}  // namespace kmeff::lattice
