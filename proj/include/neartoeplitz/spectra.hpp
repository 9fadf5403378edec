#ifndef NEARTOEPLITZ_SPECTRA_HPP
#define NEARTOEPLITZ_SPECTRA_HPP

// Closed-form eigen-pairs for
//   * symmetric tridiagonal Toeplitz T_n(a, b, a),
//   * general tridiagonal Toeplitz T_n(a, b, c) with ac != 0,
//   * the skew matrix K_n = T_n(-1, 0, 1),
//   * the near-Toeplitz matrix R_n.
//
// Pairs are emitted by ascending index j, not by eigenvalue. Every vector is
// scaled so that its largest component has magnitude 1 and its first nonzero
// component has argument in [0, pi).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "neartoeplitz/errors.hpp"
#include "neartoeplitz/matrix.hpp"
#include "neartoeplitz/oracle.hpp"
#include "neartoeplitz/transforms.hpp"

namespace neartoeplitz {

inline constexpr double kDefaultResidualTol = 1e-10;

enum class PairFlag { regular, duplicate_of_all_ones };

inline const char* to_string(PairFlag flag) noexcept
{
  return flag == PairFlag::regular ? "regular" : "duplicate_of_all_ones";
}

struct EigenPair {
  int index = 0;  ///< j in the closed forms; 0 is the all-ones pair of R_n
  Complex value;
  ComplexVector vector;
  PairFlag flag = PairFlag::regular;
};

struct SpectrumReport {
  std::string matrix;  ///< family and parameters, e.g. "R_4"
  int n = 0;
  std::vector<EigenPair> pairs;
  int zero_multiplicity = 0;  ///< algebraic, from the closed form
  double max_residual = 0.0;
  bool verified = false;
  /// n - rank(A), filled in by callers that run the rank oracle.
  std::optional<int> zero_geometric_multiplicity;

  ComplexVector eigenvalues() const
  {
    ComplexVector out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.value);
    return out;
  }
};

namespace detail {

/// sin(num * pi / den), with exact integer range reduction to [0, pi/2] so
/// that multiples of pi give exactly 0 and symmetric angles agree bitwise.
inline double sin_pi_ratio(long long num, long long den)
{
  const long long period = 2 * den;
  long long r = num % period;
  if (r < 0) r += period;
  double sign = 1.0;
  if (r >= den) {
    r -= den;
    sign = -1.0;
  }
  if (r == 0) return 0.0;
  if (2 * r > den) r = den - r;
  if (2 * r == den) return sign;
  return sign * std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

/// cos(num * pi / den) = sin((den - 2 num) * pi / (2 den)).
inline double cos_pi_ratio(long long num, long long den)
{
  return sin_pi_ratio(den - 2 * num, 2 * den);
}

/// i^k exactly.
inline Complex i_power(long long k)
{
  static constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
  static constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
  const auto r = static_cast<std::size_t>(((k % 4) + 4) % 4);
  return {re[r], im[r]};
}

inline ComplexVector normalized(ComplexVector v)
{
  const double m = oracle::inf_norm(v);
  if (m == 0.0) throw Error(ErrorKind::ZeroVector, "cannot normalize the zero vector");
  for (auto& x : v) x /= m;
  for (const auto& x : v) {
    if (x == Complex{}) continue;
    const bool upper = x.imag() > 0.0 || (x.imag() == 0.0 && x.real() > 0.0);
    if (!upper)
      for (auto& y : v) y = -y;
    break;
  }
  require_finite(v, "eigenvector");
  return v;
}

/// Sine vector (sin(j theta), ..., sin(n j theta)) with theta = pi / (n + 1).
inline ComplexVector sine_vector(int j, int n)
{
  ComplexVector u(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) u[k - 1] = sin_pi_ratio(static_cast<long long>(k) * j, n + 1);
  return u;
}

/// Pairs of T_n(s, b, s); the scalar type follows the band values.
template <class Scalar>
std::vector<EigenPair> symmetric_pairs(Scalar s, Scalar b, int n)
{
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const double two_cos = 2.0 * cos_pi_ratio(j, n + 1);
    const Scalar lambda = b + s * two_cos;
    pairs.push_back({j, Complex(lambda), normalized(sine_vector(j, n)), PairFlag::regular});
  }
  return pairs;
}

inline std::vector<EigenPair> standard_basis_pairs(Complex b, int n)
{
  std::vector<EigenPair> pairs;
  for (int j = 1; j <= n; ++j) {
    ComplexVector e(static_cast<std::size_t>(n));
    e[j - 1] = 1.0;
    pairs.push_back({j, b, std::move(e), PairFlag::regular});
  }
  return pairs;
}

}  // namespace detail

/// Eigen-pairs of T_n(a, b, a): lambda_j = b + 2a cos(j pi/(n+1)) with the
/// sine vectors. For a = 0 the matrix is bI and the standard basis is used.
/// Scalar is double or Complex.
template <class Scalar>
std::vector<EigenPair> symmetric_toeplitz_eigen(Scalar a, Scalar b, int n)
{
  detail::require_order(n, 1, "symmetric_toeplitz_eigen");
  if (a == Scalar{}) return detail::standard_basis_pairs(Complex(b), n);
  return detail::symmetric_pairs(a, b, n);
}

inline std::vector<EigenPair> symmetric_toeplitz_eigen(int a, int b, int n)
{
  return symmetric_toeplitz_eigen(static_cast<double>(a), static_cast<double>(b), n);
}

/// Eigen-pairs of T_n(a, b, c), ac != 0, transported from the symmetrized
/// matrix T_n(sqrt(ac), b, sqrt(ac)): u is an eigenvector of the symmetric
/// matrix iff D^{-1} u is one of T_n(a, b, c), D = Diag(1, d, ..., d^{n-1}).
inline std::vector<EigenPair> general_toeplitz_eigen(Complex a, Complex b, Complex c, int n)
{
  detail::require_order(n, 1, "general_toeplitz_eigen");
  const auto ratio = symmetrizing_ratio(a, c);
  auto pairs = detail::symmetric_pairs(ratio.root, b, n);
  const Complex d_inv = 1.0 / ratio.d;
  for (auto& p : pairs) {
    Complex scale = 1.0;
    for (auto& x : p.vector) {
      x *= scale;
      scale *= d_inv;
    }
    p.vector = detail::normalized(std::move(p.vector));
  }
  return pairs;
}

/// Eigen-pairs of K_n: lambda_j = 2i cos(j pi/(n+1)), k-th component of u_j
/// equal to i^k sin(k j pi/(n+1)).
inline std::vector<EigenPair> skew_toeplitz_eigen(int n)
{
  detail::require_order(n, 1, "skew_toeplitz_eigen");
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    ComplexVector u(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
      u[k - 1] = detail::i_power(k) * detail::sin_pi_ratio(static_cast<long long>(k) * j, n + 1);
    const Complex lambda(0.0, 2.0 * detail::cos_pi_ratio(j, n + 1));
    pairs.push_back({j, lambda, detail::normalized(std::move(u)), PairFlag::regular});
  }
  return pairs;
}

/// S_n (u; 0): v_1 = u_1, v_k = u_k + u_{k-1}, v_n = u_{n-1}.
inline ComplexVector lift_eigenvector(std::span<const Complex> u, int n)
{
  detail::require_order(n, 2, "lift_eigenvector");
  detail::require_size(u.size(), static_cast<std::size_t>(n - 1), "lift_eigenvector input");
  ComplexVector v(static_cast<std::size_t>(n));
  v[0] = u[0];
  for (std::size_t k = 1; k + 1 < v.size(); ++k) v[k] = u[k] + u[k - 1];
  v.back() = u.back();
  return v;
}

namespace detail {

inline void fill_residuals(SpectrumReport& report, const TridiagonalMatrix& a, double tol)
{
  report.max_residual = 0.0;
  for (const auto& p : report.pairs)
    report.max_residual = std::max(report.max_residual, oracle::residual(a, p.value, p.vector));
  report.verified = report.max_residual <= tol;
}

}  // namespace detail

/// Spectrum of R_n. Pair 0 is (0, all-ones); pair j = 1..n-1 has eigenvalue
/// 2i cos(j pi/n) and vector S_n (u_j; 0) with u_j the j-th eigenvector of
/// K_{n-1}. For even n the pair j = n/2 is a second copy of the zero
/// eigenvalue whose lifted vector collapses onto the all-ones direction; it
/// is flagged and carries the all-ones vector.
inline SpectrumReport near_toeplitz_eigen(int n, double tol = kDefaultResidualTol)
{
  detail::require_order(n, 2, "near_toeplitz_eigen");
  const auto size = static_cast<std::size_t>(n);
  SpectrumReport report;
  report.matrix = "R_" + std::to_string(n);
  report.n = n;
  report.pairs.reserve(size);
  report.pairs.push_back({0, 0.0, ComplexVector(size, 1.0), PairFlag::regular});

  const auto skew = skew_toeplitz_eigen(n - 1);
  for (int j = 1; j < n; ++j) {
    if (2 * j == n) {
      report.pairs.push_back({j, 0.0, ComplexVector(size, 1.0), PairFlag::duplicate_of_all_ones});
      continue;
    }
    const Complex lambda(0.0, 2.0 * detail::cos_pi_ratio(j, n));
    report.pairs.push_back(
        {j, lambda, detail::normalized(lift_eigenvector(skew[j - 1].vector, n)), PairFlag::regular});
  }
  report.zero_multiplicity = n % 2 == 0 ? 2 : 1;
  detail::fill_residuals(report, build_R(n), tol);
  return report;
}

/// Wraps a pair list for one of the Toeplitz families into a report. The
/// zero multiplicity counts eigenvalues within 1e-12 (relative to the band
/// magnitudes) of zero.
inline SpectrumReport make_report(std::string descriptor, const TridiagonalMatrix& a,
                                  std::vector<EigenPair> pairs, double tol = kDefaultResidualTol)
{
  SpectrumReport report;
  report.matrix = std::move(descriptor);
  report.n = static_cast<int>(a.order());
  report.pairs = std::move(pairs);
  double scale = 1.0;
  for (std::size_t k = 0; k < a.order(); ++k) {
    scale = std::max(scale, std::abs(a.diag()[k]));
    if (k + 1 < a.order()) scale = std::max({scale, std::abs(a.sub()[k]), std::abs(a.sup()[k])});
  }
  report.zero_multiplicity = static_cast<int>(std::count_if(
      report.pairs.begin(), report.pairs.end(),
      [&](const EigenPair& p) { return std::abs(p.value) <= 1e-12 * scale; }));
  detail::fill_residuals(report, a, tol);
  return report;
}

}  // namespace neartoeplitz

#endif  // NEARTOEPLITZ_SPECTRA_HPP
