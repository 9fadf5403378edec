#ifndef NEARTOEPLITZ_MATRIX_HPP
#define NEARTOEPLITZ_MATRIX_HPP

// Structured matrix families (R, Z, K, S, E, tridiagonal Toeplitz) and the
// small amount of algebra the rest of the library needs on them.
//
// Orders are passed as signed integers so that a bad value coming from the
// command line reaches the OrderTooSmall check instead of wrapping around.
// Indices inside the containers are zero-based.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "neartoeplitz/errors.hpp"

namespace neartoeplitz {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

namespace detail {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
bool is_finite(const T& x)
{
  if constexpr (is_complex<T>::value) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  } else if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(x);
  } else {
    return true;
  }
}

template <class T>
double magnitude(const T& x)
{
  if constexpr (is_complex<T>::value) {
    return std::abs(x);
  } else {
    return std::abs(static_cast<double>(x));
  }
}

template <class Range>
void require_finite(const Range& values, const char* what)
{
  for (const auto& x : values) {
    if (!is_finite(x)) {
      throw Error(ErrorKind::NonFinite, std::string(what) + " contains a non-finite entry");
    }
  }
}

}  // namespace detail

/// Square row-major matrix. Used for the oracle side (products, ranks) and for
/// the few families that are not tridiagonal (S^{-1}, E). T is a complex,
/// real or integer scalar.
template <class T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;

  explicit DenseMatrix(std::size_t n) : n_(n), entries_(n * n, T{}) {}

  DenseMatrix(std::size_t n, std::vector<T> entries) : n_(n), entries_(std::move(entries))
  {
    detail::require_size(entries_.size(), n_ * n_, "DenseMatrix entries");
    detail::require_finite(entries_, "DenseMatrix");
  }

  static DenseMatrix identity(std::size_t n)
  {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t order() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  std::span<const T> entries() const noexcept { return entries_; }

  DenseMatrix transpose() const
  {
    DenseMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix operator-() const
  {
    DenseMatrix r(*this);
    for (auto& x : r.entries_) x = -x;
    return r;
  }

  DenseMatrix& operator+=(const DenseMatrix& rhs)
  {
    detail::require_size(rhs.n_, n_, "matrix sum");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
  }

  DenseMatrix& operator-=(const DenseMatrix& rhs)
  {
    detail::require_size(rhs.n_, n_, "matrix difference");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
  friend DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  /// Largest entry magnitude.
  double max_abs() const
  {
    double m = 0.0;
    for (const auto& x : entries_) m = std::max(m, detail::magnitude(x));
    return m;
  }

  template <class U>
  DenseMatrix<U> cast() const
  {
    std::vector<U> out;
    out.reserve(entries_.size());
    for (const auto& x : entries_) out.push_back(static_cast<U>(x));
    return DenseMatrix<U>(n_, std::move(out));
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> entries_;
};

/// Matrix product that only visits the overlap of each row's and column's
/// nonzero span, so banded and triangular factors cost O(n^2 * band).
template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b)
{
  const std::size_t n = a.order();
  detail::require_size(b.order(), n, "matrix product");
  std::vector<std::size_t> row_lo(n, n), row_hi(n, 0), col_lo(n, n), col_hi(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) != T{}) {
        row_lo[i] = std::min(row_lo[i], k);
        row_hi[i] = k;
      }
      if (b(k, i) != T{}) {
        col_lo[i] = std::min(col_lo[i], k);
        col_hi[i] = k;
      }
    }
  }
  DenseMatrix<T> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (row_lo[i] == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (col_lo[j] == n) continue;
      const std::size_t lo = std::max(row_lo[i], col_lo[j]);
      const std::size_t hi = std::min(row_hi[i], col_hi[j]);
      T acc{};
      for (std::size_t k = lo; k <= hi && lo <= hi; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

/// e_i e_j^T with one-based i, j.
template <class T>
DenseMatrix<T> unit_outer(std::size_t n, std::size_t i, std::size_t j)
{
  DenseMatrix<T> m(n);
  m(i - 1, j - 1) = T{1};
  return m;
}

/// Tridiagonal matrix stored as its three bands. Off-band entries are not
/// stored; use to_dense() when a full matrix is needed.
class TridiagonalMatrix {
 public:
  TridiagonalMatrix(ComplexVector sub, ComplexVector diag, ComplexVector sup)
      : sub_(std::move(sub)), diag_(std::move(diag)), sup_(std::move(sup))
  {
    if (diag_.empty()) throw Error(ErrorKind::OrderTooSmall, "tridiagonal matrix needs n >= 1");
    detail::require_size(sub_.size(), diag_.size() - 1, "subdiagonal");
    detail::require_size(sup_.size(), diag_.size() - 1, "superdiagonal");
    detail::require_finite(sub_, "subdiagonal");
    detail::require_finite(diag_, "diagonal");
    detail::require_finite(sup_, "superdiagonal");
  }

  static TridiagonalMatrix constant(std::size_t n, Complex a, Complex b, Complex c)
  {
    return TridiagonalMatrix(ComplexVector(n - 1, a), ComplexVector(n, b), ComplexVector(n - 1, c));
  }

  std::size_t order() const noexcept { return diag_.size(); }

  std::span<const Complex> sub() const noexcept { return sub_; }
  std::span<const Complex> diag() const noexcept { return diag_; }
  std::span<const Complex> sup() const noexcept { return sup_; }

  /// Entry (i, j), zero outside the band.
  Complex operator()(std::size_t i, std::size_t j) const
  {
    if (i == j) return diag_[i];
    if (i == j + 1) return sub_[j];
    if (j == i + 1) return sup_[i];
    return {};
  }

  DenseMatrix<Complex> to_dense() const
  {
    const std::size_t n = order();
    DenseMatrix<Complex> m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = diag_[i];
      if (i + 1 < n) {
        m(i + 1, i) = sub_[i];
        m(i, i + 1) = sup_[i];
      }
    }
    return m;
  }

  TridiagonalMatrix transpose() const { return TridiagonalMatrix(sup_, diag_, sub_); }

  friend bool operator==(const TridiagonalMatrix&, const TridiagonalMatrix&) = default;

 private:
  ComplexVector sub_;
  ComplexVector diag_;
  ComplexVector sup_;
};

/// Converts an integer-valued tridiagonal matrix into an exact integer dense
/// matrix. Throws Malformed if any entry is not a real integer.
template <class Int>
DenseMatrix<Int> exact_dense(const TridiagonalMatrix& a)
{
  static_assert(std::is_integral_v<Int>);
  const auto dense = a.to_dense();
  const std::size_t n = dense.order();
  DenseMatrix<Int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex x = dense(i, j);
      if (x.imag() != 0.0 || std::trunc(x.real()) != x.real()) {
        throw Error(ErrorKind::Malformed, "entry is not an exact integer");
      }
      out(i, j) = static_cast<Int>(x.real());
    }
  }
  return out;
}

// ---- constructors ---------------------------------------------------------

/// T_n(a, b, c): constant subdiagonal a, diagonal b, superdiagonal c.
inline TridiagonalMatrix build_toeplitz(Complex a, Complex b, Complex c, int n)
{
  detail::require_order(n, 1, "build_toeplitz");
  return TridiagonalMatrix::constant(static_cast<std::size_t>(n), a, b, c);
}

/// Lower shift matrix Z_n.
inline TridiagonalMatrix build_Z(int n)
{
  detail::require_order(n, 1, "build_Z");
  return build_toeplitz(1.0, 0.0, 0.0, n);
}

/// K_n = Z_n^T - Z_n.
inline TridiagonalMatrix build_K(int n)
{
  detail::require_order(n, 1, "build_K");
  return build_toeplitz(-1.0, 0.0, 1.0, n);
}

/// R_n: K_n with -1 at (1,1) and +1 at (n,n).
inline TridiagonalMatrix build_R(int n)
{
  detail::require_order(n, 2, "build_R");
  const auto size = static_cast<std::size_t>(n);
  ComplexVector diag(size, 0.0);
  diag.front() = -1.0;
  diag.back() = 1.0;
  return TridiagonalMatrix(ComplexVector(size - 1, -1.0), std::move(diag),
                           ComplexVector(size - 1, 1.0));
}

/// S_n = I_n + Z_n as an exact dense matrix of scalar type T.
template <class T = Complex>
DenseMatrix<T> dense_S(int n)
{
  detail::require_order(n, 1, "build_S");
  const auto size = static_cast<std::size_t>(n);
  auto s = DenseMatrix<T>::identity(size);
  for (std::size_t i = 1; i < size; ++i) s(i, i - 1) = T{1};
  return s;
}

inline DenseMatrix<Complex> build_S(int n) { return dense_S<Complex>(n); }

/// Exchange matrix E(i, j) = delta(i + j, n + 1).
template <class T = Complex>
DenseMatrix<T> dense_E(int n)
{
  detail::require_order(n, 1, "build_E");
  const auto size = static_cast<std::size_t>(n);
  DenseMatrix<T> e(size);
  for (std::size_t i = 0; i < size; ++i) e(i, size - 1 - i) = T{1};
  return e;
}

inline DenseMatrix<Complex> build_E(int n) { return dense_E<Complex>(n); }

// ---- algebra --------------------------------------------------------------

/// Three-band product; out-of-range neighbours contribute nothing.
inline ComplexVector matvec(const TridiagonalMatrix& a, std::span<const Complex> v)
{
  const std::size_t n = a.order();
  detail::require_size(v.size(), n, "matvec operand");
  const auto sub = a.sub();
  const auto diag = a.diag();
  const auto sup = a.sup();
  ComplexVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = diag[k] * v[k];
    if (k > 0) acc += sub[k - 1] * v[k - 1];
    if (k + 1 < n) acc += sup[k] * v[k + 1];
    out[k] = acc;
  }
  return out;
}

/// E A E: entry (i, j) of the result is A(n+1-i, n+1-j).
template <class T>
DenseMatrix<T> flip_conjugate(const DenseMatrix<T>& a)
{
  const std::size_t n = a.order();
  DenseMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(n - 1 - i, n - 1 - j);
  return out;
}

inline DenseMatrix<Complex> flip_conjugate(const TridiagonalMatrix& a)
{
  return flip_conjugate(a.to_dense());
}

// Exact comparisons: these predicates are meant for exactly constructed
// matrices, so there is no tolerance.

template <class T>
bool is_centro_symmetric(const DenseMatrix<T>& a)
{
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(n - 1 - i, n - 1 - j) != a(i, j)) return false;
  return true;
}

template <class T>
bool is_centro_skew(const DenseMatrix<T>& a)
{
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(n - 1 - i, n - 1 - j) != -a(i, j)) return false;
  return true;
}

inline bool is_centro_symmetric(const TridiagonalMatrix& a)
{
  return is_centro_symmetric(a.to_dense());
}

inline bool is_centro_skew(const TridiagonalMatrix& a) { return is_centro_skew(a.to_dense()); }

// ---- sign patterns --------------------------------------------------------

class SignPattern {
 public:
  explicit SignPattern(const DenseMatrix<double>& a) : n_(a.order()), signs_(n_ * n_, 0)
  {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) signs_[i * n_ + j] = sign_of(a(i, j));
  }

  static int sign_of(double x) noexcept { return (x > 0.0) - (x < 0.0); }

  std::size_t order() const noexcept { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return signs_[i * n_ + j]; }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::size_t n_;
  std::vector<std::int8_t> signs_;
};

/// Membership in the tridiagonal sign-pattern class: negative subdiagonal,
/// positive superdiagonal, negative (1,1), positive (n,n), zero elsewhere.
inline bool in_pattern_class(const DenseMatrix<double>& a)
{
  const std::size_t n = a.order();
  detail::require_order(static_cast<long long>(n), 2, "in_pattern_class");
  const SignPattern p(a);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int want = 0;
      if (i == j + 1) want = -1;
      else if (j == i + 1) want = 1;
      else if (i == 0 && j == 0) want = -1;
      else if (i == n - 1 && j == n - 1) want = 1;
      if (p(i, j) != want) return false;
    }
  }
  return true;
}

/// Complex overload: the class is a class of real matrices, so any nonzero
/// imaginary part rejects.
inline bool in_pattern_class(const DenseMatrix<Complex>& a)
{
  const std::size_t n = a.order();
  detail::require_order(static_cast<long long>(n), 2, "in_pattern_class");
  DenseMatrix<double> real(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).imag() != 0.0) return false;
      real(i, j) = a(i, j).real();
    }
  }
  return in_pattern_class(real);
}

inline bool in_pattern_class(const TridiagonalMatrix& a) { return in_pattern_class(a.to_dense()); }

}  // namespace neartoeplitz

#endif  // NEARTOEPLITZ_MATRIX_HPP
