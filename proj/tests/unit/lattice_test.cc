#include "kmeff/lattice.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "kmeff/errors.h"
#include "kmeff/random.h"

namespace kmeff::lattice {
namespace {

Matrix random_det_one(int n, Rng& rng, double spread) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = standard_normal(rng);
  }
  // Skew the columns so that reduction has something to do.
  for (int j = 1; j < n; ++j) g.col(j) += spread * uniform(rng, -1, 1) * g.col(0);
  if (g.determinant() < 0) g.col(0) *= -1.0;
  return g / std::pow(g.determinant(), 1.0 / n);
}

Matrix well_conditioned(int n, Rng& rng) {
  while (true) {
    const Matrix g = random_det_one(n, rng, 1.0);
    if (linalg::condition_number(g) < 6.0) return g;
  }
}

Matrix to_double(const IntMatrix& m) { return m.cast<double>(); }

TEST(ReduceConjugatorTest, FactorisationProperties) {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix g = random_det_one(n, rng, 50.0);
    const ReducedBasis rb = reduce_conjugator(g);
    EXPECT_TRUE(has_unit_determinant(rb.u));
    EXPECT_EQ(rb.u * rb.u_inv, IntMatrix::Identity(n, n));
    // g u = q r with q orthogonal: Gram matrices agree.
    const Matrix gu = g * to_double(rb.u);
    EXPECT_LE((gu.transpose() * gu - rb.r.transpose() * rb.r).norm(),
              1e-9 * gu.squaredNorm());
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(rb.r(i, i), 0.0);
      for (int j = 0; j < i; ++j) EXPECT_EQ(rb.r(i, j), 0.0);
      // Size reduction.
      for (int j = i + 1; j < n; ++j) EXPECT_LE(std::abs(rb.r(i, j)), 0.5 * rb.r(i, i) + 1e-9);
    }
    // Lovasz condition with the reduction parameter 0.99.
    for (int k = 1; k < n; ++k) {
      const double mu = rb.r(k - 1, k) / rb.r(k - 1, k - 1);
      EXPECT_GE(rb.r(k, k) * rb.r(k, k) + 1e-9,
                (0.99 - mu * mu) * rb.r(k - 1, k - 1) * rb.r(k - 1, k - 1));
    }
  }
}

TEST(ReduceConjugatorTest, ReducesSkewedBases) {
  Matrix g(2, 2);
  g << 1, 1000, 0, 1;
  const ReducedBasis rb = reduce_conjugator(g);
  EXPECT_LE(std::abs(rb.r(0, 1)), 0.5);
  EXPECT_THROW(reduce_conjugator(Matrix::Identity(1, 1)), InvalidDimension);
}

TEST(UnitDeterminantTest, ExactArithmetic) {
  IntMatrix m(2, 2);
  m << 3, 5, 1, 2;
  EXPECT_TRUE(has_unit_determinant(m));
  m(0, 0) = 4;
  EXPECT_FALSE(has_unit_determinant(m));
  // det = 1 with entries large enough that double elimination loses it.
  const std::int64_t big = 3037000493;  // ~ 2^31.5
  IntMatrix h(2, 2);
  h << big + 1, big, big, big - 1;  // det = (b+1)(b-1) - b^2 = -1
  EXPECT_FALSE(has_unit_determinant(h));
  h << big, big - 1, big + 1, big;  // det = b^2 - (b^2 - 1) = 1
  EXPECT_TRUE(has_unit_determinant(h));
  IntMatrix minus(3, 3);
  minus << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_FALSE(has_unit_determinant(minus));
}

using IntVec = std::vector<std::int64_t>;

// Independent route: scan the box |v_i| <= radius ||b^-1||_2 and keep the
// vectors inside the ellipsoid.
std::set<IntVec> brute_force(const Matrix& b, double radius) {
  const int n = static_cast<int>(b.rows());
  const double bound = radius / linalg::singular_values(b).minCoeff();
  const int h = static_cast<int>(std::floor(bound));
  std::set<IntVec> out;
  IntVec v(n, -h);
  while (true) {
    linalg::Vector x(n);
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      x(i) = static_cast<double>(v[i]);
      zero = zero && v[i] == 0;
    }
    if (!zero && (b * x).norm() <= radius) out.insert(v);
    int i = 0;
    while (i < n && v[i] == h) v[i++] = -h;
    if (i == n) break;
    ++v[i];
  }
  return out;
}

TEST(EnumerateShortVectorsTest, MatchesBruteForce) {
  Rng rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3;
    const Matrix b = well_conditioned(n, rng);
    const double radius = uniform(rng, 0.5, 3.0);
    const std::set<IntVec> expected = brute_force(b, radius);
    std::set<IntVec> found;
    enumerate_short_vectors(b, radius, 1000, [&](const IntVec& v, double r) {
      EXPECT_TRUE(found.insert(v).second) << "visited twice";
      return r;
    });
    EXPECT_EQ(found, expected) << "trial " << trial;
  }
}

TEST(EnumerateShortVectorsTest, ShrinkingRadiusFindsShortestVector) {
  Rng rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 3;
    const Matrix b = well_conditioned(n, rng);
    const std::set<IntVec> all = brute_force(b, 3.0);
    ASSERT_FALSE(all.empty());
    double shortest = INFINITY;
    for (const IntVec& v : all) {
      linalg::Vector x(n);
      for (int i = 0; i < n; ++i) x(i) = static_cast<double>(v[i]);
      shortest = std::min(shortest, (b * x).norm());
    }
    double best = INFINITY;
    enumerate_short_vectors(b, 3.0, 1000, [&](const IntVec& v, double r) {
      linalg::Vector x(n);
      for (int i = 0; i < n; ++i) x(i) = static_cast<double>(v[i]);
      best = std::min(best, (b * x).norm());
      return std::min(r, best * (1 + 1e-12));
    });
    EXPECT_NEAR(best, shortest, 1e-12 * shortest);
  }
}

TEST(EnumerateShortVectorsTest, CapAndDegenerateInput) {
  Matrix b = Matrix::Identity(2, 2);
  b(1, 1) = 1e-6;
  auto keep = [](const IntVec&, double r) { return r; };
  try {
    enumerate_short_vectors(b, 1.0, 1000, keep);
    FAIL() << "expected the cap to trigger";
  } catch (const EnumerationCapExceeded& e) {
    EXPECT_EQ(e.configured_cap(), 1000);
    EXPECT_GT(e.required_cap(), 1000);
  }
  b(1, 1) = 0.0;
  EXPECT_THROW(enumerate_short_vectors(b, 1.0, 1000, keep), DegenerateInput);
}

}  // namespace
}  // namespace kmeff::lattice
