#include "kmeff/slgroup.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "kmeff/errors.h"

namespace kmeff::slgroup {
namespace {

const double kE = std::exp(1.0);

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrix random_sl(int n, Rng& rng, double max_cond) {
  while (true) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = standard_normal(rng);
    }
    const double det = g.determinant();
    if (det < 0) g.col(0) *= -1.0;
    g /= std::pow(std::abs(det), 1.0 / n);
    if (linalg::condition_number(g) <= max_cond) return g;
  }
}

// Haar k, diagonal with log-uniform spread, unipotent upper factor.
Matrix random_thin_conjugator(Rng& rng, double max_ratio) {
  const double log_a = 0.5 * uniform(rng, 0.0, std::log(max_ratio));
  Matrix u = Matrix::Identity(2, 2);
  u(0, 1) = uniform(rng, -0.5, 0.5);
  return linalg::haar_orthogonal(2, rng) * diag2(std::exp(-log_a), std::exp(log_a)) * u;
}

TEST(ExpandingElementTest, RankOneExample) {
  const SemisimpleParams sp = expanding_element(2, kE, 1.0 / kE);
  EXPECT_EQ(sp.n0, 1);
  EXPECT_NEAR(sp.s_lambda(0, 0), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(sp.s_lambda(1, 1), std::exp(0.5), 1e-15);
  EXPECT_NEAR(sp.ad_norm, kE, 1e-12);
  EXPECT_NEAR(sp.ad_inv_norm_on_uminus, 1.0 / kE, 1e-12);
}

TEST(ExpandingElementTest, RankTwoExample) {
  const SemisimpleParams sp = expanding_element(3, kE, 1.0 / kE);
  EXPECT_NEAR(sp.ad_norm, kE * kE, 1e-12);
  EXPECT_NEAR(sp.s_lambda.determinant(), 1.0, 1e-12);
}

TEST(ExpandingElementTest, DefaultsAndInvariants) {
  for (int n = 2; n <= 5; ++n) {
    for (double lambda : {10.0, 100.0, 999.0, 1e4}) {
      const SemisimpleParams sp = expanding_element(n, lambda, 0.1);
      EXPECT_EQ(sp.n0, static_cast<int>(std::floor(std::log10(lambda) + 1e-9)));
      EXPECT_NEAR(sp.s_lambda.determinant(), 1.0, 1e-12);
      for (int i = 0; i + 1 < n; ++i) {
        EXPECT_LT(sp.s_lambda(i, i), sp.s_lambda(i + 1, i + 1));
      }
      const double ht_sum = n - 1.0;
      EXPECT_LE(sp.ad_norm, std::pow(lambda, ht_sum) * (1 + 1e-12));
    }
  }
  EXPECT_THROW(expanding_element(2, 5.0, 0.1), DegenerateInput);
  EXPECT_THROW(expanding_element(1, 100.0, 0.1), InvalidDimension);
  EXPECT_THROW(expanding_element(2, 100.0, 1.0), InvalidArgument);
}

TEST(SlBasisTest, OrthonormalTracelessAndOrdered) {
  for (int n = 2; n <= 4; ++n) {
    const auto basis = sl_basis(n);
    ASSERT_EQ(basis.size(), std::size_t(n * n - 1));
    for (std::size_t a = 0; a < basis.size(); ++a) {
      EXPECT_NEAR(basis[a].trace(), 0.0, 1e-15);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        EXPECT_NEAR(basis[a].cwiseProduct(basis[b]).sum(), a == b ? 1.0 : 0.0, 1e-15);
      }
    }
    // u^- first: strictly lower triangular.
    for (int a = 0; a < n * (n - 1) / 2; ++a) {
      EXPECT_EQ(Matrix(basis[a].triangularView<Eigen::Upper>()).norm(), 0.0);
    }
    Rng rng(70 + n);
    Matrix x(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) x(i, j) = standard_normal(rng);
    }
    x -= Matrix::Identity(n, n) * (x.trace() / n);
    EXPECT_LE((sl_matrix(sl_coordinates(x), n) - x).norm(), 1e-14);
  }
}

TEST(AdOperatorTest, Examples) {
  EXPECT_LE((ad_operator(Matrix::Identity(3, 3)) - Matrix::Identity(8, 8)).norm(), 1e-15);
  EXPECT_NEAR(linalg::operator_norm(ad_operator(diag2(1 / kE, kE))), kE * kE, 1e-12);
  EXPECT_THROW(ad_operator(diag2(1.0, 0.0)), InvalidArgument);
}

// Independent route: power iteration on ad^T ad.
double power_iteration_norm(const Matrix& a) {
  const Matrix m = a.transpose() * a;
  linalg::Vector v = linalg::Vector::Ones(m.rows());
  double value = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const linalg::Vector w = m * v;
    value = w.norm();
    v = w / value;
  }
  return std::sqrt(value);
}

TEST(AdOperatorTest, DiagonalNormIsLargestRatio) {
  Rng rng(72);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    linalg::Vector d(n);
    for (int i = 0; i < n; ++i) d(i) = std::exp(uniform(rng, -2, 2));
    const double closed = d.maxCoeff() / d.minCoeff();
    const Matrix s = d.asDiagonal();
    EXPECT_NEAR(power_iteration_norm(ad_operator(s)), closed, 1e-8 * closed);
    EXPECT_NEAR(linalg::operator_norm(ad_operator(s)), closed, 1e-8 * closed);
  }
}

TEST(SampleMuSTest, SingularValuesAreThoseOfS) {
  Rng rng(73);
  for (int n = 2; n <= 4; ++n) {
    const SemisimpleParams sp = expanding_element(n, 100.0, 0.1);
    const linalg::Vector diag = sp.s_lambda.diagonal();
    std::vector<double> expected(diag.data(), diag.data() + n);
    std::sort(expected.begin(), expected.end());
    for (int trial = 0; trial < 200; ++trial) {
      const linalg::Vector sv = linalg::singular_values(sample_mu_s(sp, rng));
      std::vector<double> got(sv.data(), sv.data() + n);
      std::sort(got.begin(), got.end());
      for (int i = 0; i < n; ++i) EXPECT_NEAR(got[i], expected[i], 1e-10 * expected[i]);
    }
  }
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

TEST(SampleMuSTest, BiKInvariance) {
  // Angle of the top left and right singular vectors for g, k g and g k.
  Rng rng(74);
  const SemisimpleParams sp = expanding_element(2, 100.0, 0.1);
  constexpr int kSamples = 10000;
  auto angles = [](const Matrix& g) {
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    auto fold = [](double t) { return t < 0 ? t + M_PI : t; };
    return std::pair{fold(std::atan2(svd.matrixU()(1, 0), svd.matrixU()(0, 0))),
                     fold(std::atan2(svd.matrixV()(1, 0), svd.matrixV()(0, 0)))};
  };
  std::vector<double> left, right, left_k, right_k;
  const Matrix k = linalg::haar_orthogonal(2, rng);
  for (int s = 0; s < kSamples; ++s) {
    const auto [l0, r0] = angles(sample_mu_s(sp, rng));
    left.push_back(l0);
    right.push_back(r0);
    left_k.push_back(angles(k * sample_mu_s(sp, rng)).first);
    right_k.push_back(angles(sample_mu_s(sp, rng) * k).second);
  }
  // 1.95 sqrt(2/n) is the 0.001 critical value.
  const double critical = 1.95 * std::sqrt(2.0 / kSamples);
  EXPECT_LT(ks_statistic(left, left_k), critical);
  EXPECT_LT(ks_statistic(right, right_k), critical);
}

TEST(RadiusParamsTest, Examples) {
  const SemisimpleParams sp = expanding_element(2, kE * kE, 1.0 / kE);
  ASSERT_NEAR(sp.ad_norm, kE * kE, 1e-12);
  const RadiusParams rp = radius_params(sp);
  EXPECT_DOUBLE_EQ(rp.R, 0.34);
  EXPECT_NEAR(rp.rho, 0.34 / (kE * kE), 1e-15);
  EXPECT_NEAR(rp.rho, 0.046, 1e-3);
}

TEST(RadiusParamsTest, ContainmentOfTheSmallBall) {
  Rng rng(75);
  for (int n = 2; n <= 3; ++n) {
    const SemisimpleParams sp = expanding_element(n, 100.0, 0.1);
    const RadiusParams rp = radius_params(sp);
    EXPECT_LE(rp.rho, rp.R);
    const Matrix s = sp.s_lambda;
    const Matrix s_inv = s.inverse();
    for (int trial = 0; trial < 1000; ++trial) {
      Matrix x(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) x(i, j) = standard_normal(rng);
      }
      x -= Matrix::Identity(n, n) * (x.trace() / n);
      x *= rp.rho * uniform01(rng) / linalg::frobenius_norm(x);
      EXPECT_LE(linalg::frobenius_norm(s * x * s_inv), rp.R * (1 + 1e-12));
      EXPECT_LE(linalg::frobenius_norm(s_inv * x * s), rp.R * (1 + 1e-12));
    }
  }
}

using IntMatrixSet = std::set<std::vector<std::int64_t>>;

std::vector<std::int64_t> entries(const IntMatrix& m) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

// Independent route: every integer matrix with |m_ij - delta_ij| <= h, det 1
// by cofactor expansion, and ||g m g^-1 - I||_F <= e^r - 1.
IntMatrixSet brute_force_candidates(const Matrix& g, double r, int h) {
  const int n = static_cast<int>(g.rows());
  const Matrix g_inv = g.inverse();
  const double t = std::expm1(r);
  IntMatrixSet out;
  std::vector<std::int64_t> off(n * n, -h);
  while (true) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = off[i * n + j] + (i == j ? 1 : 0);
    }
    std::int64_t det = 0;
    if (n == 2) {
      det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    } else {
      det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
            m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
            m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
    const bool identity = std::all_of(off.begin(), off.end(), [](auto v) { return v == 0; });
    if (det == 1 && !identity) {
      const Matrix y = g * m.cast<double>() * g_inv - Matrix::Identity(n, n);
      if (linalg::frobenius_norm(y) <= t) out.insert(entries(m));
    }
    std::size_t i = 0;
    while (i < off.size() && off[i] == h) off[i++] = -h;
    if (i == off.size()) break;
    ++off[i];
  }
  return out;
}

IntMatrixSet as_set(const std::vector<IntMatrix>& v) {
  IntMatrixSet out;
  for (const auto& m : v) out.insert(entries(m));
  return out;
}

TEST(LatticeCandidatesTest, IdentityConjugator) {
  const DiscreteGroupModel model(Matrix::Identity(2, 2));
  EXPECT_TRUE(lattice_candidates(model, 0.3).empty());
  EXPECT_TRUE(lattice_candidates(model, 1e-6).empty());
  const auto found = lattice_candidates(model, 1.2);
  const IntMatrixSet set = as_set(found);
  for (auto u : {std::vector<std::int64_t>{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 1, 1}, {1, 0, -1, 1}}) {
    EXPECT_TRUE(set.count(u)) << u[1] << " " << u[2];
  }
  EXPECT_EQ(set, brute_force_candidates(Matrix::Identity(2, 2), 1.2, 3));
  EXPECT_EQ(found.size(), 22u);
  EXPECT_TRUE(std::is_sorted(found.begin(), found.end(), [](const IntMatrix& a, const IntMatrix& b) {
    return entries(a) < entries(b);
  }));
}

TEST(LatticeCandidatesTest, ThreeByThreeIdentity) {
  const DiscreteGroupModel model(Matrix::Identity(3, 3));
  const auto found = lattice_candidates(model, 1.05);
  // e^1.05 - 1 < 2, so |m_ij - delta_ij| <= 1 covers everything.
  EXPECT_EQ(as_set(found), brute_force_candidates(Matrix::Identity(3, 3), 1.05, 1));
  EXPECT_EQ(found.size(), 132u);
}

TEST(LatticeCandidatesTest, RandomConjugators) {
  Rng rng(76);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix g = random_sl(2, rng, 4.0);
    const DiscreteGroupModel model(g);
    const double r = uniform(rng, 0.3, 1.0);
    const int h = static_cast<int>(std::ceil(linalg::condition_number(g) * std::expm1(r)));
    EXPECT_EQ(as_set(lattice_candidates(model, r)), brute_force_candidates(g, r, h));
  }
}

TEST(LatticeCandidatesTest, CapIsReported) {
  const DiscreteGroupModel model(diag2(1e-3, 1e3), 10);
  try {
    lattice_candidates(model, 0.3);
    FAIL() << "expected the enumeration cap to trigger";
  } catch (const EnumerationCapExceeded& e) {
    EXPECT_EQ(e.configured_cap(), 10);
    EXPECT_GT(e.required_cap(), 10);
  }
}

TEST(DiscreteGroupModelTest, RejectsBadConjugators) {
  EXPECT_THROW(DiscreteGroupModel(diag2(2.0, 1.0)), InvalidArgument);
  EXPECT_THROW(DiscreteGroupModel(Matrix::Identity(1, 1)), InvalidDimension);
  EXPECT_THROW(DiscreteGroupModel(Matrix::Identity(2, 2), 0), InvalidArgument);
}

TEST(DiscretenessRadiusTest, IdentityIsThick) {
  const DiscreteGroupModel model(Matrix::Identity(2, 2));
  EXPECT_EQ(discreteness_radius(model, {0.34, 0.046}), 0.046);
  EXPECT_THROW(discreteness_radius(model, {0.34, 0.5}), InvalidArgument);
  EXPECT_THROW(discreteness_radius(model, {0.6, 0.1}), InvalidArgument);
}

TEST(DiscretenessRadiusTest, CuspPoint) {
  const DiscreteGroupModel model(diag2(0.1, 10.0));
  EXPECT_NEAR(discreteness_radius(model, {0.34, 0.034}), 1e-2, 1e-15);
}

TEST(DiscretenessRadiusTest, KInvariance) {
  Rng rng(77);
  const RadiusParams rp{0.34, 0.0034};
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix g = random_thin_conjugator(rng, 1e6);
    const Matrix k = linalg::haar_orthogonal(2, rng);
    const double base = discreteness_radius(DiscreteGroupModel(g), rp);
    const double rotated = discreteness_radius(DiscreteGroupModel(k * g), rp);
    EXPECT_NEAR(rotated, base, 1e-9);
  }
}

TEST(DiscretenessRadiusTest, GlobalExpansion) {
  Rng rng(78);
  const SemisimpleParams sp = expanding_element(2, 100.0, 0.1);
  const RadiusParams rp = radius_params(sp);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix g = random_thin_conjugator(rng, 1e3 / rp.rho);
    const double base = discreteness_radius(DiscreteGroupModel(g), rp);
    const double expanded = discreteness_radius(DiscreteGroupModel(sp.s_lambda * g), rp);
    EXPECT_GE(expanded, base / sp.ad_norm - 1e-9);
  }
}

// Slow route: scan every integer N with |N_ij| <= twice the entry bound of
// the unreduced conjugator.
double double_cap_oracle(const Matrix& g, double rho) {
  const int n = static_cast<int>(g.rows());
  const int h = 2 * static_cast<int>(
                        std::ceil(linalg::condition_number(g) * rho * std::exp(rho) + 0.5));
  const Matrix g_inv = g.inverse();
  double best = rho;
  std::vector<int> off(n * n, -h);
  while (true) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = off[i * n + j] + (i == j ? 1 : 0);
    }
    const bool identity = std::all_of(off.begin(), off.end(), [](int v) { return v == 0; });
    if (!identity && m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) == 1) {
      const Matrix y = g * m.cast<double>() * g_inv - Matrix::Identity(n, n);
      if (linalg::frobenius_norm(y) < 1.0) {
        best = std::min(best, linalg::frobenius_norm(linalg::mat_log(y + Matrix::Identity(n, n))));
      }
    }
    std::size_t i = 0;
    while (i < off.size() && off[i] == h) off[i++] = -h;
    if (i == off.size()) break;
    ++off[i];
  }
  return best;
}

TEST(DiscretenessRadiusTest, AgreesWithDoubleCapOracle) {
  Rng rng(79);
  const RadiusParams rp{0.34, 0.34};
  int thin = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix g = random_sl(2, rng, 10.0);
    const double fast = discreteness_radius(DiscreteGroupModel(g), rp);
    const double slow = double_cap_oracle(g, rp.rho);
    EXPECT_NEAR(fast, slow, 1e-12) << "trial " << trial;
    thin += fast < rp.rho;
  }
  // The comparison is only informative if some models are below rho.
  EXPECT_GT(thin, 5);
}

TEST(NormalizedConjugatorTest, SameRadiusAndDetOne) {
  Rng rng(80);
  const RadiusParams rp{0.34, 0.0034};
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix g = random_thin_conjugator(rng, 1e5);
    const Matrix r = normalized_conjugator(3.0 * g);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
    EXPECT_EQ(r(1, 0), 0.0);
    EXPECT_NEAR(discreteness_radius(DiscreteGroupModel(r), rp),
                discreteness_radius(DiscreteGroupModel(g), rp), 1e-12);
  }
}

}  // namespace
}  // namespace kmeff::slgroup
