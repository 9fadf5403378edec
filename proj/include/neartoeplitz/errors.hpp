#ifndef NEARTOEPLITZ_ERRORS_HPP
#define NEARTOEPLITZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace neartoeplitz {

enum class ErrorKind {
  OrderTooSmall,
  OrderTooLarge,
  DimensionMismatch,
  ZeroBandProduct,
  ZeroVector,
  NonFinite,
  Malformed
};

inline const char* to_string(ErrorKind kind) noexcept
{
  switch (kind) {
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroBandProduct: return "ZeroBandProduct";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

/// Every precondition failure in the library surfaces as this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
  {
  }

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline void require_order(long long n, long long minimum, const char* what)
{
  if (n < minimum) {
    throw Error(ErrorKind::OrderTooSmall, std::string(what) + " requires n >= " +
                                              std::to_string(minimum) + ", got " +
                                              std::to_string(n));
  }
}

inline void require_size(std::size_t got, std::size_t expected, const char* what)
{
  if (got != expected) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected length " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(got));
  }
}

}  // namespace detail
}  // namespace neartoeplitz

#endif  // NEARTOEPLITZ_ERRORS_HPP
