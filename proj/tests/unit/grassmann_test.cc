#include "kmeff/grassmann.h"

#include <cmath>

#include <gtest/gtest.h>

#include "kmeff/errors.h"

namespace kmeff::grassmann {
namespace {

Subspace coordinate_span(int n, std::vector<int> axes) {
  Matrix b = Matrix::Zero(n, static_cast<int>(axes.size()));
  for (std::size_t j = 0; j < axes.size(); ++j) b(axes[j], static_cast<int>(j)) = 1.0;
  return Subspace::FromOrthonormal(b);
}

Subspace line(const linalg::Vector& v) {
  Matrix b = v.normalized();
  return Subspace::FromOrthonormal(b);
}

TEST(SplitSpaceTest, ObliqueProjectionIsIdempotentWithRightKernel) {
  linalg::Vector a(2), b(2);
  a << 1, 0;
  b << 1, 1;
  const SplitSpace ss = SplitSpace::Oblique(line(a), line(b));
  const Matrix& p = ss.proj_u();
  EXPECT_LE((p * p - p).norm(), 1e-14);
  EXPECT_LE((p * b).norm(), 1e-14);
  EXPECT_LE((p * a - a).norm(), 1e-14);
  EXPECT_LE((ss.proj_u_prime() + p - Matrix::Identity(2, 2)).norm(), 0.0);
  EXPECT_THROW(SplitSpace::Oblique(line(a), line(a)), InvalidArgument);
}

TEST(QOfSubspaceTest, LineAtFortyFiveDegrees) {
  Rng rng(51);
  linalg::Vector w(2);
  w << 1, 1;
  const SplitSpace ss = SplitSpace::Orthogonal(coordinate_span(2, {0}));
  EXPECT_NEAR(q_of_subspace(ss, line(w), rng), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(QOfSubspaceTest, MatchesGramDeterminant) {
  // Independent route: ||Pw_1 ^ ... ^ Pw_l||^2 = det of the Gram matrix of Pw_i.
  Rng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 4;
    const int du = 1 + trial % (n - 1);
    const int l = 1 + trial % du;
    const SplitSpace ss = SplitSpace::Orthogonal(random_subspace(n, du, rng));
    const Subspace w = random_subspace(n, l, rng);
    const Matrix pw = ss.proj_u() * w.basis();
    const double oracle = std::sqrt((pw.transpose() * pw).determinant());
    EXPECT_NEAR(q_of_subspace(ss, w, rng, 0), oracle, 1e-12);
    // Random unit tuples never beat an orthonormal one (Hadamard).
    EXPECT_NEAR(q_of_subspace(ss, w, rng, 200), oracle, 1e-12);
  }
}

TEST(QOfSubspaceTest, RejectsOversizedSubspace) {
  Rng rng(53);
  const SplitSpace ss = SplitSpace::Orthogonal(coordinate_span(3, {0}));
  EXPECT_THROW(q_of_subspace(ss, coordinate_span(3, {0, 1}), rng), InvalidArgument);
  EXPECT_THROW(q_of_subspace(ss, coordinate_span(4, {0}), rng), InvalidDimension);
}

TEST(ProjectionBoundTest, TightForLines) {
  Rng rng(54);
  linalg::Vector w(3);
  w << 1, 2, 2;
  const SplitSpace ss = SplitSpace::Orthogonal(coordinate_span(3, {0, 1}));
  const BoundCheck check = check_projection_bound(ss, line(w), rng);
  EXPECT_TRUE(check.holds);
  EXPECT_NEAR(check.lhs, std::sqrt(5.0) / 3.0, 1e-14);
  EXPECT_NEAR(check.slack, 0.0, 1e-14);
}

TEST(ProjectionBoundTest, HoldsForRandomOrthogonalProjections) {
  Rng rng(55);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + trial % 5;
    const int du = 1 + (trial / 5) % (n - 1);
    const int l = 1 + (trial / 7) % du;
    const SplitSpace ss = SplitSpace::Orthogonal(random_subspace(n, du, rng));
    const BoundCheck check = check_projection_bound(ss, random_subspace(n, l, rng), rng, 8);
    ASSERT_TRUE(check.holds) << "n=" << n << " dim U=" << du << " l=" << l
                             << " slack=" << check.slack;
  }
}

TEST(BijectionContractionTest, BlockDiagonalMaps) {
  Rng rng(56);
  const int n = 5;
  const SplitSpace ss = SplitSpace::Orthogonal(coordinate_span(n, {0, 1}));
  for (int trial = 0; trial < 500; ++trial) {
    Matrix l = Matrix::Zero(n, n);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) l(i, j) = standard_normal(rng);
    }
    for (int i = 2; i < n; ++i) {
      for (int j = 2; j < n; ++j) l(i, j) = standard_normal(rng);
    }
    const BoundCheck check = check_bijection_contraction(l, ss, random_subspace(n, 2, rng));
    EXPECT_TRUE(check.holds) << check.slack;
  }
}

TEST(BijectionContractionTest, RejectsMapsMixingTheSummands) {
  const SplitSpace ss = SplitSpace::Orthogonal(coordinate_span(2, {0}));
  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  EXPECT_THROW(check_bijection_contraction(shear, ss, coordinate_span(2, {0})), InvalidArgument);
}

TEST(RandomSubspaceTest, OrthonormalAndRejectsBadDims) {
  Rng rng(57);
  const Subspace s = random_subspace(6, 3, rng);
  EXPECT_LE((s.basis().transpose() * s.basis() - Matrix::Identity(3, 3)).norm(), 1e-13);
  EXPECT_THROW(random_subspace(3, 0, rng), InvalidDimension);
  EXPECT_THROW(random_subspace(3, 4, rng), InvalidDimension);
}

}  // namespace
}  // namespace kmeff::grassmann
