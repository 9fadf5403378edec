#ifndef NEARTOEPLITZ_ORACLE_HPP
#define NEARTOEPLITZ_ORACLE_HPP

// Brute-force checks that do not trust any closed form: the continuant
// recurrence for det(lambda I - A), eigen-residuals, numerical rank by
// Gaussian elimination, and trace/determinant comparison of a claimed
// spectrum.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "neartoeplitz/errors.hpp"
#include "neartoeplitz/matrix.hpp"

namespace neartoeplitz::oracle {

inline constexpr double kCharPolyTol = 1e-8;
inline constexpr double kResidualTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kRankTol = 1e-10;
inline constexpr std::size_t kMaxRankOrder = 64;

struct CharPolyEvaluation {
  Complex lambda;
  Complex value;
  double scale = 1.0;  ///< max(1, |p_0|, ..., |p_n|)
};

/// det(lambda I - A) by p_k = (lambda - d_k) p_{k-1} - sub_{k-1} sup_{k-1} p_{k-2}.
inline CharPolyEvaluation char_poly_eval(const TridiagonalMatrix& a, Complex lambda)
{
  const auto sub = a.sub();
  const auto diag = a.diag();
  const auto sup = a.sup();
  Complex prev = 1.0;
  Complex cur = lambda - diag[0];
  double scale = std::max(1.0, std::abs(cur));
  for (std::size_t k = 1; k < a.order(); ++k) {
    const Complex next = (lambda - diag[k]) * cur - sub[k - 1] * sup[k - 1] * prev;
    prev = cur;
    cur = next;
    scale = std::max(scale, std::abs(cur));
  }
  return {lambda, cur, scale};
}

inline double inf_norm(std::span<const Complex> v)
{
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

/// ||A v - lambda v||_inf / max(1, ||v||_inf).
inline double residual(const TridiagonalMatrix& a, Complex lambda, std::span<const Complex> v)
{
  detail::require_size(v.size(), a.order(), "residual vector");
  const double vnorm = inf_norm(v);
  if (vnorm == 0.0) throw Error(ErrorKind::ZeroVector, "residual of the zero vector");
  const auto av = matvec(a, v);
  double m = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) m = std::max(m, std::abs(av[k] - lambda * v[k]));
  return m / std::max(1.0, vnorm);
}

/// Row-by-row dense product, independent of the banded matvec.
template <class T>
ComplexVector dense_matvec(const DenseMatrix<T>& a, std::span<const Complex> v)
{
  const std::size_t n = a.order();
  detail::require_size(v.size(), n, "dense_matvec operand");
  ComplexVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) acc += Complex(a(i, j)) * v[j];
    out[i] = acc;
  }
  return out;
}

/// Numerical rank by Gaussian elimination with partial pivoting. A pivot
/// counts when its magnitude exceeds tol times the largest initial entry.
template <class T>
int rank_small(const DenseMatrix<T>& a, double tol = kRankTol)
{
  const std::size_t n = a.order();
  if (n > kMaxRankOrder) {
    throw Error(ErrorKind::OrderTooLarge,
                "rank_small is limited to n <= " + std::to_string(kMaxRankOrder));
  }
  std::vector<Complex> m;
  m.reserve(n * n);
  for (const auto& x : a.entries()) m.emplace_back(Complex(x));
  const double threshold = tol * a.max_abs();
  if (a.max_abs() == 0.0) return 0;

  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t pivot = row;
    for (std::size_t i = row + 1; i < n; ++i)
      if (std::abs(m[i * n + col]) > std::abs(m[pivot * n + col])) pivot = i;
    if (std::abs(m[pivot * n + col]) <= threshold) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[row * n + j]);
    for (std::size_t i = row + 1; i < n; ++i) {
      const Complex factor = m[i * n + col] / m[row * n + col];
      if (factor == Complex{}) continue;
      for (std::size_t j = col; j < n; ++j) m[i * n + j] -= factor * m[row * n + j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

/// n - rank(A - lambda I).
inline int geometric_multiplicity(const TridiagonalMatrix& a, Complex lambda, double tol = kRankTol)
{
  auto shifted = a.to_dense();
  for (std::size_t k = 0; k < a.order(); ++k) shifted(k, k) -= lambda;
  return static_cast<int>(a.order()) - rank_small(shifted, tol);
}

/// Infinity-norm distance between two vectors after dividing each by its own
/// largest-magnitude component, i.e. a phase- and scale-free comparison of
/// directions.
inline double distance_to_direction(std::span<const Complex> v, std::span<const Complex> direction)
{
  detail::require_size(v.size(), direction.size(), "direction");
  auto pivot_of = [](std::span<const Complex> x) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < x.size(); ++k)
      if (std::abs(x[k]) > std::abs(x[best])) best = k;
    if (x.empty() || x[best] == Complex{}) throw Error(ErrorKind::ZeroVector, "zero direction");
    return x[best];
  };
  const Complex pv = pivot_of(v);
  const Complex pd = pivot_of(direction);
  double m = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) m = std::max(m, std::abs(v[k] / pv - direction[k] / pd));
  return m;
}

struct SpectrumCheck {
  std::string name;  ///< charpoly | trace | trace2 | det
  bool pass = false;
  Complex lhs;
  Complex rhs;
  double tol = 0.0;
};

struct SpectrumComparison {
  std::size_t n = 0;
  std::vector<SpectrumCheck> checks;
  bool pass = false;
};

/// Certifies a claimed eigenvalue multiset against A without computing a
/// spectrum: every value must be a root of the continuant, and the power sums
/// and product must agree with trace(A), trace(A^2) and det(A).
inline SpectrumComparison spectrum_compare(std::span<const Complex> claimed,
                                           const TridiagonalMatrix& a)
{
  const std::size_t n = a.order();
  detail::require_size(claimed.size(), n, "claimed spectrum");
  const auto nd = static_cast<double>(n);
  SpectrumComparison out;
  out.n = n;

  // charpoly: worst |p(lambda)| / scale over the claimed values.
  double worst = 0.0;
  for (const auto& lambda : claimed) {
    const auto eval = char_poly_eval(a, lambda);
    worst = std::max(worst, std::abs(eval.value) / eval.scale);
  }
  out.checks.push_back({"charpoly", worst <= kCharPolyTol, worst, 0.0, kCharPolyTol});

  const auto sub = a.sub();
  const auto diag = a.diag();
  const auto sup = a.sup();
  Complex trace{}, trace2{};
  for (std::size_t k = 0; k < n; ++k) trace += diag[k], trace2 += diag[k] * diag[k];
  for (std::size_t k = 0; k + 1 < n; ++k) trace2 += 2.0 * sub[k] * sup[k];

  Complex sum{}, sum2{}, product = 1.0;
  for (const auto& lambda : claimed) {
    sum += lambda;
    sum2 += lambda * lambda;
    product *= lambda;
  }
  out.checks.push_back({"trace", std::abs(sum - trace) <= kTraceTol * nd, sum, trace, kTraceTol * nd});
  out.checks.push_back(
      {"trace2", std::abs(sum2 - trace2) <= kTraceTol * nd * nd, sum2, trace2, kTraceTol * nd * nd});

  const auto at_zero = char_poly_eval(a, 0.0);
  const Complex det = (n % 2 == 0 ? 1.0 : -1.0) * at_zero.value;
  const double det_tol = kCharPolyTol * at_zero.scale;
  out.checks.push_back({"det", std::abs(product - det) <= det_tol, product, det, det_tol});

  out.pass = std::all_of(out.checks.begin(), out.checks.end(), [](const auto& c) { return c.pass; });
  return out;
}

}  // namespace neartoeplitz::oracle

#endif  // NEARTOEPLITZ_ORACLE_HPP
