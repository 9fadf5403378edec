#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "neartoeplitz/oracle.hpp"
#include "neartoeplitz/spectra.hpp"
#include "support/brute_force.hpp"

using namespace neartoeplitz;
using namespace neartoeplitz::oracle;

TEST(CharPoly, RTwoIsLambdaSquared)
{
  // det(lambda I - R_2) = (lambda + 1)(lambda - 1) + 1 = lambda^2.
  const auto r2 = build_R(2);
  EXPECT_EQ(char_poly_eval(r2, 0.0).value, Complex(0.0));
  for (Complex x : {Complex(3.0), Complex(-0.5, 2.0), Complex(0, 1)})
    EXPECT_LE(std::abs(char_poly_eval(r2, x).value - x * x), 1e-14);
}

TEST(CharPoly, SkewEigenvalueIsRoot)
{
  const auto eval = char_poly_eval(build_K(3), Complex(0, std::sqrt(2.0)));
  EXPECT_LE(std::abs(eval.value), 1e-12);
  EXPECT_GE(eval.scale, std::max(1.0, std::abs(eval.value)));
}

TEST(CharPoly, IdentityAtZero)
{
  const auto eval = char_poly_eval(build_toeplitz(0, 1, 0, 3), 0.0);
  EXPECT_EQ(eval.value, Complex(-1.0));
}

TEST(CharPoly, MatchesCofactorExpansion)
{
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto sub = brute::random_vector(rng, n - 1);
      const auto diag = brute::random_vector(rng, n);
      const auto sup = brute::random_vector(rng, n - 1);
      const TridiagonalMatrix a(sub, diag, sup);
      brute::Mat m = brute::zeros(n);
      for (int i = 0; i < n; ++i) {
        m[i][i] = diag[i];
        if (i + 1 < n) m[i + 1][i] = sub[i], m[i][i + 1] = sup[i];
      }
      const Complex lambda = brute::random_vector(rng, 1, 2.0)[0];
      const auto eval = char_poly_eval(a, lambda);
      EXPECT_LE(std::abs(eval.value - brute::char_poly(m, lambda)), 1e-12 * eval.scale);
      EXPECT_GE(eval.scale, std::max(1.0, std::abs(eval.value)));
    }
  }
}

TEST(CharPoly, DependsOnlyOnBandProduct)
{
  for (int n = 1; n <= 20; ++n) {
    const auto x = build_toeplitz(2, 0.5, 3, n);
    const auto y = build_toeplitz(6, 0.5, 1, n);
    for (Complex lambda : {Complex(0.1, 0.2), Complex(-3.0), Complex(0, 7)}) {
      const auto ex = char_poly_eval(x, lambda);
      const auto ey = char_poly_eval(y, lambda);
      EXPECT_EQ(ex.value, ey.value);
      EXPECT_EQ(ex.scale, ey.scale);
    }
  }
}

TEST(CharPoly, ClosedFormRootsUpTo32)
{
  for (int n = 2; n <= 32; ++n) {
    auto check = [&](const TridiagonalMatrix& a, const std::vector<EigenPair>& pairs) {
      for (const auto& p : pairs) {
        const auto eval = char_poly_eval(a, p.value);
        EXPECT_LE(std::abs(eval.value), 1e-8 * eval.scale) << n;
      }
    };
    check(build_R(n), near_toeplitz_eigen(n).pairs);
    check(build_K(n), skew_toeplitz_eigen(n));
    check(build_toeplitz(-2, 3, -2, n), symmetric_toeplitz_eigen(-2.0, 3.0, n));
    check(build_toeplitz(2, 0, -3, n), general_toeplitz_eigen(2.0, 0.0, -3.0, n));
  }
}

TEST(Residual, Examples)
{
  EXPECT_EQ(residual(build_R(7), 0.0, ComplexVector(7, 1.0)), 0.0);
  const auto u1 = skew_toeplitz_eigen(3)[0].vector;
  EXPECT_LE(residual(build_K(3), Complex(0, std::sqrt(2.0)), u1), 1e-12);
  // ||0 - 1 * v||_inf / ||v||_inf = 1.
  EXPECT_EQ(residual(build_R(4), 1.0, ComplexVector(4, 1.0)), 1.0);
}

TEST(Residual, Errors)
{
  try {
    residual(build_K(3), 0.0, ComplexVector(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroVector);
  }
  try {
    residual(build_K(3), 0.0, ComplexVector(2, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Residual, ScaleInvariantWhenNormAtLeastOne)
{
  // The max(1, ||v||) denominator makes the residual scale-free only while
  // ||alpha v|| >= 1, so v starts at norm 1e3 and alpha stays >= 1e-3.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> log_alpha(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 30;
    const auto a = build_R(n);
    auto v = brute::random_vector(rng, n);
    const double norm = inf_norm(v);
    for (auto& x : v) x *= 1e3 / norm;
    const Complex lambda = brute::random_vector(rng, 1)[0];
    const double base = residual(a, lambda, v);
    const double alpha = std::pow(10.0, log_alpha(rng));
    auto scaled = v;
    for (auto& x : scaled) x *= alpha;
    EXPECT_LE(std::abs(residual(a, lambda, scaled) - base), 1e-15 * base + 1e-300);
  }
}

TEST(Rank, Examples)
{
  EXPECT_EQ(rank_small(build_R(2).to_dense()), 1);
  EXPECT_EQ(rank_small(build_R(4).to_dense()), 3);
  EXPECT_EQ(rank_small(DenseMatrix<Complex>::identity(5)), 5);
  EXPECT_EQ(rank_small(DenseMatrix<Complex>(3)), 0);
}

TEST(Rank, ROrdersUpTo16)
{
  for (int n = 2; n <= 16; ++n) {
    EXPECT_EQ(rank_small(build_R(n).to_dense()), n - 1) << n;
    EXPECT_EQ(rank_small(exact_dense<long long>(build_R(n))), n - 1) << n;
    EXPECT_EQ(geometric_multiplicity(build_R(n), 0.0), 1) << n;
  }
}

TEST(Rank, RejectsLargeOrders)
{
  try {
    rank_small(DenseMatrix<Complex>::identity(65));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderTooLarge);
  }
  EXPECT_EQ(rank_small(DenseMatrix<Complex>::identity(64)), 64);
}

TEST(Rank, RankDeficientProducts)
{
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 12; ++n) {
    for (int r = 1; r <= n; ++r) {
      // Outer-product sum of r random rank-one terms.
      DenseMatrix<Complex> m(n);
      for (int t = 0; t < r; ++t) {
        const auto x = brute::random_vector(rng, n);
        const auto y = brute::random_vector(rng, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m(i, j) += x[i] * y[j];
      }
      EXPECT_EQ(rank_small(m), r) << n << " " << r;
    }
  }
}

TEST(SpectrumCompare, Examples)
{
  const ComplexVector good = {0.0, 0.0, Complex(0, std::sqrt(2.0)), Complex(0, -std::sqrt(2.0))};
  const auto yes = spectrum_compare(good, build_R(4));
  EXPECT_TRUE(yes.pass);
  ASSERT_EQ(yes.checks.size(), 4u);
  EXPECT_EQ(yes.checks[1].name, "trace");
  EXPECT_EQ(yes.checks[1].rhs, Complex(0.0));
  EXPECT_EQ(yes.checks[2].name, "trace2");
  EXPECT_EQ(yes.checks[2].rhs, Complex(-4.0));

  const auto no = spectrum_compare(ComplexVector(4, 0.0), build_R(4));
  EXPECT_FALSE(no.pass);
  EXPECT_TRUE(no.checks[0].pass);   // 0 is a root
  EXPECT_FALSE(no.checks[2].pass);  // but sum of squares is 0, not -4

  const double b = 2.0;
  ComplexVector sym;
  for (int j = 1; j <= 3; ++j) sym.emplace_back(b + 2 * std::cos(j * std::numbers::pi / 4));
  EXPECT_TRUE(spectrum_compare(sym, build_toeplitz(1, b, 1, 3)).pass);
}

TEST(SpectrumCompare, DetectsPerturbation)
{
  auto values = near_toeplitz_eigen(6).eigenvalues();
  values[1] += Complex(0, 1e-3);
  const auto c = spectrum_compare(values, build_R(6));
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.checks[0].pass);
}

TEST(SpectrumCompare, DimensionMismatch)
{
  try {
    spectrum_compare(ComplexVector(3), build_R(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(DistanceToDirection, PhaseAndScaleFree)
{
  const ComplexVector ones(5, 1.0);
  EXPECT_EQ(distance_to_direction(ComplexVector(5, Complex(0, -3.0)), ones), 0.0);
  ComplexVector off = ones;
  off[2] = 0.5;
  EXPECT_NEAR(distance_to_direction(off, ones), 0.5, 1e-15);
  EXPECT_THROW(distance_to_direction(ComplexVector(5), ones), Error);
}

TEST(DenseMatvec, AgreesWithBanded)
{
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 30; ++n) {
    const auto a = build_toeplitz(Complex(1, 2), -0.5, Complex(0, 3), n);
    const auto v = brute::random_vector(rng, n);
    const auto x = dense_matvec(a.to_dense(), v);
    const auto y = matvec(a, v);
    for (int k = 0; k < n; ++k) EXPECT_LE(std::abs(x[k] - y[k]), 1e-14);
  }
}
