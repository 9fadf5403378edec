#ifndef NEARTOEPLITZ_SERIALIZE_HPP
#define NEARTOEPLITZ_SERIALIZE_HPP

// JSON and CSV rendering for matrices, spectra and certificates, plus the
// matrix-file reader. Output is deterministic: fields appear in a fixed
// order and every float is printed with 17 significant digits.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "neartoeplitz/errors.hpp"
#include "neartoeplitz/matrix.hpp"
#include "neartoeplitz/oracle.hpp"
#include "neartoeplitz/spectra.hpp"
#include "neartoeplitz/transforms.hpp"

namespace neartoeplitz {

/// %.17g, with negative zero printed as 0.
inline std::string format_number(double x)
{
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Streaming pretty-printer. Containers opened with `inline_layout` keep all
/// their elements on one line; `wrap` breaks a non-inline array every `wrap`
/// elements instead of after each one.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object(bool inline_layout = false) { return open('{', inline_layout, 0); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array(bool inline_layout = false, std::size_t wrap = 0)
  {
    return open('[', inline_layout, wrap);
  }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k)
  {
    separate();
    write_string(k);
    os_ << ": ";
    pending_key_ = true;
    return *this;
  }

  JsonWriter& value(double x) { return raw(format_number(x)); }
  JsonWriter& value(int x) { return raw(std::to_string(x)); }
  JsonWriter& value(std::size_t x) { return raw(std::to_string(x)); }
  JsonWriter& value(bool x) { return raw(x ? "true" : "false"); }
  JsonWriter& value(const char* s) { return value(std::string(s)); }
  JsonWriter& value(const std::string& s)
  {
    separate();
    write_string(s);
    return *this;
  }
  JsonWriter& value(const Complex& z)
  {
    begin_object(true);
    key("re").value(z.real());
    key("im").value(z.imag());
    return end_object();
  }

  template <class Range>
  JsonWriter& complex_array(const Range& values, std::size_t wrap = 0)
  {
    begin_array(wrap == 0, wrap);
    for (const auto& z : values) value(Complex(z));
    return end_array();
  }

  void finish() { os_ << '\n'; }

 private:
  struct Frame {
    char close;
    bool inline_layout;
    std::size_t wrap;
    std::size_t count = 0;
  };

  JsonWriter& open(char c, bool inline_layout, std::size_t wrap)
  {
    separate();
    os_ << c;
    frames_.push_back({c == '{' ? '}' : ']', inline_layout || (!frames_.empty() && frames_.back().inline_layout), wrap});
    return *this;
  }

  JsonWriter& close(char c)
  {
    const Frame f = frames_.back();
    frames_.pop_back();
    if (!f.inline_layout && f.count > 0) newline();
    os_ << c;
    return *this;
  }

  JsonWriter& raw(const std::string& text)
  {
    separate();
    os_ << text;
    return *this;
  }

  void separate()
  {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (frames_.empty()) return;
    Frame& f = frames_.back();
    if (f.count > 0) os_ << ',';
    if (f.inline_layout) {
      if (f.count > 0) os_ << ' ';
    } else if (f.wrap == 0 || f.count % f.wrap == 0) {
      newline();
    } else {
      os_ << ' ';
    }
    ++f.count;
  }

  void newline()
  {
    os_ << '\n';
    for (std::size_t k = 0; k < frames_.size(); ++k) os_ << "  ";
  }

  void write_string(const std::string& s)
  {
    os_ << '"';
    for (char ch : s) {
      if (ch == '"' || ch == '\\') os_ << '\\';
      os_ << ch;
    }
    os_ << '"';
  }

  std::ostream& os_;
  std::vector<Frame> frames_;
  bool pending_key_ = false;
};

// ---- matrices -------------------------------------------------------------

inline void write_json(JsonWriter& w, const TridiagonalMatrix& a)
{
  w.begin_object();
  w.key("n").value(a.order());
  w.key("kind").value("tridiagonal");
  w.key("sub").complex_array(a.sub());
  w.key("diag").complex_array(a.diag());
  w.key("sup").complex_array(a.sup());
  w.end_object();
}

/// Dense entries are a flat row-major array, one matrix row per line.
inline void write_json(JsonWriter& w, const DenseMatrix<Complex>& a)
{
  w.begin_object();
  w.key("n").value(a.order());
  w.key("kind").value("dense");
  w.key("entries").complex_array(a.entries(), std::max<std::size_t>(a.order(), 1));
  w.end_object();
}

template <class T>
std::string to_json(const T& value)
{
  std::ostringstream os;
  JsonWriter w(os);
  write_json(w, value);
  w.finish();
  return os.str();
}

using MatrixFile = std::variant<TridiagonalMatrix, DenseMatrix<Complex>>;

namespace detail {

inline Complex parse_complex(const nlohmann::json& j, const char* where)
{
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() ||
      !j["im"].is_number()) {
    throw Error(ErrorKind::Malformed, std::string(where) + ": expected {\"re\": number, \"im\": number}");
  }
  return {j["re"].get<double>(), j["im"].get<double>()};
}

inline ComplexVector parse_complex_array(const nlohmann::json& doc, const char* field)
{
  if (!doc.contains(field) || !doc[field].is_array()) {
    throw Error(ErrorKind::Malformed, std::string("missing array field \"") + field + "\"");
  }
  ComplexVector out;
  for (const auto& item : doc[field]) {
    if (item.is_array()) {
      for (const auto& inner : item) out.push_back(parse_complex(inner, field));
    } else {
      out.push_back(parse_complex(item, field));
    }
  }
  return out;
}

}  // namespace detail

/// Reads the matrix interchange format:
///   { "n": int, "kind": "tridiagonal", "sub": [...], "diag": [...], "sup": [...] }
///   { "n": int, "kind": "dense", "entries": [...] }   (flat row-major or nested rows)
/// Scalars are {"re": float, "im": float}; bare numbers are read as real.
inline MatrixFile parse_matrix(std::istream& in)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Malformed, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Malformed, "matrix document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw Error(ErrorKind::Malformed, "missing integer field \"n\"");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw Error(ErrorKind::Malformed, "missing string field \"kind\"");
  const auto n = doc["n"].get<long long>();
  detail::require_order(n, 1, "matrix file");
  const auto size = static_cast<std::size_t>(n);
  const auto kind = doc["kind"].get<std::string>();

  if (kind == "tridiagonal") {
    auto sub = detail::parse_complex_array(doc, "sub");
    auto diag = detail::parse_complex_array(doc, "diag");
    auto sup = detail::parse_complex_array(doc, "sup");
    detail::require_size(diag.size(), size, "diag");
    return TridiagonalMatrix(std::move(sub), std::move(diag), std::move(sup));
  }
  if (kind == "dense") {
    auto entries = detail::parse_complex_array(doc, "entries");
    detail::require_size(entries.size(), size * size, "entries");
    return DenseMatrix<Complex>(size, std::move(entries));
  }
  throw Error(ErrorKind::Malformed, "unknown matrix kind \"" + kind + "\"");
}

inline MatrixFile parse_matrix(const std::string& text)
{
  std::istringstream in(text);
  return parse_matrix(in);
}

inline DenseMatrix<Complex> dense_of(const MatrixFile& m)
{
  return std::visit(
      [](const auto& x) -> DenseMatrix<Complex> {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, TridiagonalMatrix>) {
          return x.to_dense();
        } else {
          return x;
        }
      },
      m);
}

// ---- spectra --------------------------------------------------------------

inline void write_json(JsonWriter& w, const SpectrumReport& r)
{
  w.begin_object();
  w.key("matrix").value(r.matrix);
  w.key("n").value(r.n);
  w.key("pairs").begin_array();
  for (const auto& p : r.pairs) {
    w.begin_object();
    w.key("j").value(p.index);
    w.key("lambda").value(p.value);
    w.key("vector").complex_array(p.vector);
    w.key("flag").value(to_string(p.flag));
    w.end_object();
  }
  w.end_array();
  w.key("zero_multiplicity").value(r.zero_multiplicity);
  w.key("max_residual").value(r.max_residual);
  w.key("verified").value(r.verified);
  w.end_object();
}

/// One row per pair: j, lambda_re, lambda_im, flag, v1_re, v1_im, ...
inline void write_csv(std::ostream& os, const SpectrumReport& r)
{
  os << "j,lambda_re,lambda_im,flag";
  for (int k = 1; k <= r.n; ++k) os << ",v" << k << "_re,v" << k << "_im";
  os << '\n';
  for (const auto& p : r.pairs) {
    os << p.index << ',' << format_number(p.value.real()) << ',' << format_number(p.value.imag())
       << ',' << to_string(p.flag);
    for (const auto& x : p.vector) os << ',' << format_number(x.real()) << ',' << format_number(x.imag());
    os << '\n';
  }
}

inline void write_json(JsonWriter& w, const oracle::SpectrumComparison& c)
{
  w.begin_object();
  w.key("n").value(c.n);
  w.key("checks").begin_array();
  for (const auto& check : c.checks) {
    w.begin_object(true);
    w.key("name").value(check.name);
    w.key("pass").value(check.pass);
    w.key("lhs").value(check.lhs);
    w.key("rhs").value(check.rhs);
    w.key("tol").value(check.tol);
    w.end_object();
  }
  w.end_array();
  w.key("pass").value(c.pass);
  w.end_object();
}

// ---- certificates ---------------------------------------------------------

inline void write_json(JsonWriter& w, const ReductionCertificate& c)
{
  w.begin_object();
  w.key("identity").value("reduction");
  w.key("n").value(c.n);
  w.key("exact_match").value(c.exact_match);
  w.key("witnesses").begin_object();
  w.key("s");
  write_json(w, c.s);
  w.key("s_inv");
  write_json(w, c.s_inv);
  w.key("conjugated");
  write_json(w, c.conjugated);
  w.key("expected");
  write_json(w, c.expected);
  w.end_object();
  w.end_object();
}

inline void write_json(JsonWriter& w, const CommutatorCertificate& c)
{
  w.begin_object();
  w.key("identity").value("commutator");
  w.key("n").value(c.n);
  w.key("exact_match").value(c.holds());
  w.key("witnesses").begin_object();
  w.key("commutator");
  write_json(w, c.commutator);
  w.key("claimed");
  write_json(w, c.claimed);
  w.key("expected");
  write_json(w, c.expected);
  w.end_object();
  w.end_object();
}

inline void write_json(JsonWriter& w, const SymmetrizationCertificate& c)
{
  w.begin_object();
  w.key("identity").value("symmetrization");
  w.key("n").value(c.diag_d.size());
  w.key("residual").value(c.residual);
  w.key("bound").value(c.bound());
  w.key("within_bound").value(c.within_bound());
  w.key("witnesses").begin_object();
  w.key("d").value(c.d);
  w.key("diag_d").complex_array(c.diag_d);
  w.key("conjugated");
  write_json(w, c.conjugated);
  w.key("symmetrized");
  write_json(w, c.symmetrized);
  w.end_object();
  w.end_object();
}

/// Long format: witness,row,col,re,im with one-based indices.
inline void write_csv_witness(std::ostream& os, const std::string& name, const DenseMatrix<Complex>& m)
{
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      os << name << ',' << i + 1 << ',' << j + 1 << ',' << format_number(m(i, j).real()) << ','
         << format_number(m(i, j).imag()) << '\n';
}

/// Integer-style grid for exact matrices, complex entries fall back to a+bi.
inline void write_plain(std::ostream& os, const DenseMatrix<Complex>& m)
{
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (const auto& z : m.entries()) {
    std::string s = format_number(z.real());
    if (z.imag() != 0.0) s += (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
    width = std::max(width, s.size());
    cells.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < m.order(); ++i) {
    os << "  ";
    for (std::size_t j = 0; j < m.order(); ++j) {
      const auto& s = cells[i * m.order() + j];
      os << std::string(width - s.size() + (j == 0 ? 0 : 1), ' ') << s;
    }
    os << '\n';
  }
}

inline std::string format_complex(const Complex& z)
{
  std::string s = format_number(z.real());
  s += z.imag() < 0 ? "-" : "+";
  s += format_number(std::abs(z.imag())) + "i";
  return s;
}

}  // namespace neartoeplitz

#endif  // NEARTOEPLITZ_SERIALIZE_HPP
