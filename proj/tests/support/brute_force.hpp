#ifndef NEARTOEPLITZ_TESTS_BRUTE_FORCE_HPP
#define NEARTOEPLITZ_TESTS_BRUTE_FORCE_HPP

// Test-only reference computations. Nothing here calls into the library's
// algorithms; inputs are plain nested vectors.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace brute {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<C>(n)); }

inline Mat product(const Mat& a, const Mat& b)
{
  const std::size_t n = a.size();
  Mat c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline std::vector<C> apply(const Mat& a, const std::vector<C>& v)
{
  std::vector<C> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

/// Laplace expansion along the first row; fine up to n = 8.
inline C det(const Mat& a)
{
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a[0][0];
  C total = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    if (a[0][col] == C{}) continue;
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<C> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) row.push_back(a[i][j]);
      minor.push_back(row);
    }
    const double sign = col % 2 == 0 ? 1.0 : -1.0;
    total += sign * a[0][col] * det(minor);
  }
  return total;
}

/// det(lambda I - A) by cofactor expansion.
inline C char_poly(const Mat& a, C lambda)
{
  Mat m = a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (auto& x : m[i]) x = -x;
    m[i][i] += lambda;
  }
  return det(m);
}

inline C trace(const Mat& a)
{
  C t = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

/// Entry (i, j) of R_n written straight from its verbal definition, one-based.
inline double r_entry(std::size_t n, std::size_t i, std::size_t j)
{
  if (i == j + 1) return -1.0;
  if (j == i + 1) return 1.0;
  if (i == 1 && j == 1) return -1.0;
  if (i == n && j == n) return 1.0;
  return 0.0;
}

inline Mat r_matrix(std::size_t n)
{
  Mat m = zeros(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) m[i - 1][j - 1] = r_entry(n, i, j);
  return m;
}

inline std::vector<C> random_vector(std::mt19937_64& rng, std::size_t n, double spread = 1.0)
{
  std::uniform_real_distribution<double> dist(-spread, spread);
  std::vector<C> v(n);
  for (auto& x : v) x = C(dist(rng), dist(rng));
  return v;
}

}  // namespace brute

#endif  // NEARTOEPLITZ_TESTS_BRUTE_FORCE_HPP
