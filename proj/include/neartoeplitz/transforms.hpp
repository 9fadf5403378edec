#ifndef NEARTOEPLITZ_TRANSFORMS_HPP
#define NEARTOEPLITZ_TRANSFORMS_HPP

// Similarity machinery around R_n and T_n(a,b,c):
//   * S_n^{-1} from the (finite) alternating Neumann series of Z_n,
//   * the reduction S_n^{-1} R_n S_n = K_n + e_n e_{n-1}^T,
//   * the commutator identities used to prove it,
//   * the diagonal similarity that symmetrizes T_n(a,b,c).
//
// Everything involving R, S, K and Z runs over 64-bit integers; the
// certificates convert to binary64 complex only at the end.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "neartoeplitz/errors.hpp"
#include "neartoeplitz/matrix.hpp"

namespace neartoeplitz {

using IntMatrix = DenseMatrix<std::int64_t>;

namespace detail {

inline DenseMatrix<Complex> to_complex(const IntMatrix& m)
{
  std::vector<Complex> out;
  out.reserve(m.entries().size());
  for (auto x : m.entries()) out.emplace_back(static_cast<double>(x), 0.0);
  return DenseMatrix<Complex>(m.order(), std::move(out));
}

/// (I + Z)^{-1} = I - Z + Z^2 - ... +/- Z^{n-1}. Each power is carried as
/// its list of nonzero positions; right-multiplying by Z moves an entry at
/// column j to column j - 1 and drops column 0.
inline IntMatrix neumann_s_inverse(int n)
{
  struct Entry {
    std::size_t row, col;
    std::int64_t value;
  };
  const auto size = static_cast<std::size_t>(n);
  IntMatrix acc(size);
  std::vector<Entry> term;
  for (std::size_t i = 0; i < size; ++i) term.push_back({i, i, 1});
  std::int64_t sign = 1;
  while (!term.empty()) {
    for (const auto& e : term) acc(e.row, e.col) += sign * e.value;
    std::vector<Entry> next;
    next.reserve(term.size());
    for (const auto& e : term)
      if (e.col > 0) next.push_back({e.row, e.col - 1, e.value});
    term = std::move(next);
    sign = -sign;
  }
  return acc;
}

/// Principal square root with a signed-zero imaginary part forced to +0, so
/// that sqrt(-x + 0i) and sqrt(-x - 0i) agree.
inline Complex principal_sqrt(Complex z)
{
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  return std::sqrt(z);
}

}  // namespace detail

/// S_n^{-1}, lower triangular with (i, j) entry (-1)^{i-j}.
inline DenseMatrix<Complex> s_inverse(int n)
{
  detail::require_order(n, 1, "s_inverse");
  return detail::to_complex(detail::neumann_s_inverse(n));
}

struct ReductionCertificate {
  int n = 0;
  DenseMatrix<Complex> s;
  DenseMatrix<Complex> s_inv;
  DenseMatrix<Complex> conjugated;  ///< S^{-1} R S
  DenseMatrix<Complex> expected;    ///< K + e_n e_{n-1}^T
  bool exact_match = false;
};

/// Computes both sides of S_n^{-1} R_n S_n = K_n + e_n e_{n-1}^T exactly.
inline ReductionCertificate reduce_R(int n)
{
  detail::require_order(n, 2, "reduce_R");
  const auto size = static_cast<std::size_t>(n);
  const IntMatrix s = dense_S<std::int64_t>(n);
  const IntMatrix s_inv = detail::neumann_s_inverse(n);
  if (s * s_inv != IntMatrix::identity(size)) {
    throw Error(ErrorKind::Malformed, "Neumann series did not invert S_n");
  }
  const IntMatrix r = exact_dense<std::int64_t>(build_R(n));
  const IntMatrix conjugated = s_inv * r * s;
  const IntMatrix expected =
      exact_dense<std::int64_t>(build_K(n)) + unit_outer<std::int64_t>(size, size, size - 1);

  ReductionCertificate cert;
  cert.n = n;
  cert.s = detail::to_complex(s);
  cert.s_inv = detail::to_complex(s_inv);
  cert.conjugated = detail::to_complex(conjugated);
  cert.expected = detail::to_complex(expected);
  cert.exact_match = conjugated == expected;
  return cert;
}

struct CommutatorCertificate {
  int n = 0;
  DenseMatrix<Complex> commutator;  ///< KS - SK
  DenseMatrix<Complex> claimed;     ///< S e_n e_{n-1}^T + (e_1 e_1^T - e_n e_n^T) S
  DenseMatrix<Complex> expected;    ///< e_1 e_1^T - e_n e_n^T
  bool commutator_matches = false;
  bool claimed_matches = false;

  bool holds() const noexcept { return commutator_matches && claimed_matches; }
};

/// Both halves of the claim in the reduction proof:
///   [K, S] = e_1 e_1^T - e_n e_n^T
///   S e_n e_{n-1}^T + (e_1 e_1^T - e_n e_n^T) S = e_1 e_1^T - e_n e_n^T
inline CommutatorCertificate commutator_certificate(int n)
{
  detail::require_order(n, 2, "commutator_check");
  const auto size = static_cast<std::size_t>(n);
  const IntMatrix k = exact_dense<std::int64_t>(build_K(n));
  const IntMatrix s = dense_S<std::int64_t>(n);
  const IntMatrix corners =
      unit_outer<std::int64_t>(size, 1, 1) - unit_outer<std::int64_t>(size, size, size);
  const IntMatrix commutator = k * s - s * k;
  const IntMatrix claimed = s * unit_outer<std::int64_t>(size, size, size - 1) + corners * s;

  CommutatorCertificate cert;
  cert.n = n;
  cert.commutator = detail::to_complex(commutator);
  cert.claimed = detail::to_complex(claimed);
  cert.expected = detail::to_complex(corners);
  cert.commutator_matches = commutator == corners;
  cert.claimed_matches = claimed == corners;
  return cert;
}

inline bool commutator_check(int n) { return commutator_certificate(n).holds(); }

/// The off-diagonal value s = sqrt(ac) (principal branch) of the symmetrized
/// matrix and the ratio d with d^2 = c/a and d*a = c/d = s.
struct SymmetrizingRatio {
  Complex root;
  Complex d;
};

inline SymmetrizingRatio symmetrizing_ratio(Complex a, Complex c)
{
  const Complex product = a * c;
  if (product == Complex{}) {
    throw Error(ErrorKind::ZeroBandProduct, "diagonal symmetrization needs a*c != 0");
  }
  const Complex root = detail::principal_sqrt(product);
  return {root, root / a};
}

struct SymmetrizationCertificate {
  Complex a, b, c;
  Complex d;
  ComplexVector diag_d;          ///< (1, d, ..., d^{n-1})
  TridiagonalMatrix conjugated;  ///< D T D^{-1}, computed band-wise
  TridiagonalMatrix symmetrized; ///< T_n(sqrt(ac), b, sqrt(ac))
  double residual = 0.0;

  /// kappa(D) = (max(1,|d|) / min(1,|d|))^{n-1}.
  double kappa() const
  {
    const double m = std::abs(d);
    const double n1 = static_cast<double>(diag_d.size() - 1);
    return std::pow(std::max(1.0, m) / std::min(1.0, m), n1);
  }

  double bound() const
  {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1.0});
    return 1e-12 * scale * kappa();
  }

  bool within_bound() const { return residual <= bound(); }
};

/// Dense D T D^{-1} for a diagonal D. Used as the spot check against the
/// band-wise conjugation.
inline DenseMatrix<Complex> conjugate_dense(std::span<const Complex> diag_d,
                                            const TridiagonalMatrix& t)
{
  const std::size_t n = t.order();
  detail::require_size(diag_d.size(), n, "diagonal of D");
  DenseMatrix<Complex> d(n), d_inv(n);
  for (std::size_t k = 0; k < n; ++k) {
    d(k, k) = diag_d[k];
    d_inv(k, k) = 1.0 / diag_d[k];
  }
  return d * t.to_dense() * d_inv;
}

namespace detail {

inline double max_gap(const DenseMatrix<Complex>& x, const DenseMatrix<Complex>& y)
{
  double m = 0.0;
  const auto a = x.entries();
  const auto b = y.entries();
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace detail

/// Maps T_n(a,b,c) to T_n(sqrt(ac), b, sqrt(ac)) by D = Diag(1, d, ..., d^{n-1}).
/// The residual compares the dense triple product with the target for n <= 16
/// and the band-wise result otherwise.
inline SymmetrizationCertificate diag_symmetrize(Complex a, Complex b, Complex c, int n)
{
  detail::require_order(n, 2, "diag_symmetrize");
  const auto ratio = symmetrizing_ratio(a, c);
  const auto size = static_cast<std::size_t>(n);

  ComplexVector powers(size);
  powers[0] = 1.0;
  for (std::size_t k = 1; k < size; ++k) powers[k] = powers[k - 1] * ratio.d;
  detail::require_finite(powers, "diagonal of D");

  const auto original = build_toeplitz(a, b, c, n);
  auto conjugated = build_toeplitz(ratio.d * a, b, c / ratio.d, n);
  auto symmetrized = build_toeplitz(ratio.root, b, ratio.root, n);

  double residual = 0.0;
  if (n <= 16) {
    residual = detail::max_gap(conjugate_dense(powers, original), symmetrized.to_dense());
  } else {
    for (std::size_t k = 0; k + 1 < size; ++k) {
      residual = std::max({residual, std::abs(conjugated.sub()[k] - symmetrized.sub()[k]),
                           std::abs(conjugated.sup()[k] - symmetrized.sup()[k])});
    }
  }
  return SymmetrizationCertificate{a, b, c, ratio.d, std::move(powers), std::move(conjugated),
                                   std::move(symmetrized), residual};
}

}  // namespace neartoeplitz

#endif  // NEARTOEPLITZ_TRANSFORMS_HPP
