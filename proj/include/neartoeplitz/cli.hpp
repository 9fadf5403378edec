#ifndef NEARTOEPLITZ_CLI_HPP
#define NEARTOEPLITZ_CLI_HPP

// Command-line front end. run() is the whole program: it takes the argument
// list and the two streams, so tests can drive it without a process.
//
// Exit codes: 0 all checks pass, 1 usage or input error, 2 a mathematical
// check failed.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "neartoeplitz/errors.hpp"
#include "neartoeplitz/matrix.hpp"
#include "neartoeplitz/oracle.hpp"
#include "neartoeplitz/serialize.hpp"
#include "neartoeplitz/spectra.hpp"
#include "neartoeplitz/transforms.hpp"

namespace neartoeplitz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

inline constexpr int kVerifyMaxOrder = 512;
inline constexpr const char* kTolEnv = "NEARTOEPLITZ_TOL";

enum class Format { json, csv, plain };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::optional<double> parse_double(std::string_view s)
{
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x)) return std::nullopt;
  return x;
}

inline std::optional<double> parse_imag_part(std::string_view s)
{
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_double(s);
}

}  // namespace detail

/// Complex literal: `re`, `re+imi`, `re-imi` or `imi`, e.g. `-1`, `0+1i`, `2.5i`.
inline std::optional<Complex> parse_complex_literal(std::string_view s)
{
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    const auto re = detail::parse_double(s);
    return re ? std::optional<Complex>(Complex(*re, 0.0)) : std::nullopt;
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const auto im = detail::parse_imag_part(body);
    return im ? std::optional<Complex>(Complex(0.0, *im)) : std::nullopt;
  }
  const auto re = detail::parse_double(body.substr(0, split));
  const auto im = detail::parse_imag_part(body.substr(split));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

/// Positive finite decimal, as accepted by --tol and the tolerance variable.
inline std::optional<double> parse_tolerance(std::string_view s)
{
  const auto x = detail::parse_double(s);
  if (!x || *x <= 0.0) return std::nullopt;
  return x;
}

struct OrderRange {
  int lo = 0;
  int hi = 0;
};

inline std::optional<OrderRange> parse_range(std::string_view s)
{
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  OrderRange r;
  const auto lo = s.substr(0, colon);
  const auto hi = s.substr(colon + 1);
  auto read = [](std::string_view t, int& out) {
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc{} && ptr == t.data() + t.size() && !t.empty();
  };
  if (!read(lo, r.lo) || !read(hi, r.hi)) return std::nullopt;
  return r;
}

struct CliConfig {
  std::string command;
  std::string family = "R";
  int n = 0;
  std::string n_range;
  std::string a, b, c;
  std::string format = "json";
  std::string tol;
  std::string output;
  std::string identity = "reduction";
  std::string matrix_file;
};

// ---- subcommands ------------------------------------------------------------

namespace detail {

inline Format format_of(const std::string& s)
{
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return Format::plain;
}

inline double resolve_tolerance(const CliConfig& cfg)
{
  if (!cfg.tol.empty()) {
    const auto t = parse_tolerance(cfg.tol);
    if (!t) throw UsageError("--tol must be a positive decimal, got '" + cfg.tol + "'");
    return *t;
  }
  if (const char* env = std::getenv(kTolEnv)) {
    const auto t = parse_tolerance(env);
    if (!t) throw UsageError(std::string(kTolEnv) + " must be a positive decimal, got '" + env + "'");
    return *t;
  }
  return kDefaultResidualTol;
}

inline Complex band_param(const std::string& text, const char* name)
{
  if (text.empty()) throw UsageError(std::string("family T requires --") + name);
  const auto z = parse_complex_literal(text);
  if (!z) throw UsageError(std::string("--") + name + ": not a complex literal: '" + text + "'");
  return *z;
}

inline bool has_band_params(const CliConfig& cfg)
{
  return !cfg.a.empty() || !cfg.b.empty() || !cfg.c.empty();
}

inline void write_plain_report(std::ostream& os, const SpectrumReport& r)
{
  os << "matrix: " << r.matrix << "\n";
  os << "n: " << r.n << "\n";
  for (const auto& p : r.pairs) {
    os << "j=" << p.index << "  lambda=" << format_complex(p.value);
    if (p.flag != PairFlag::regular) os << "  [" << to_string(p.flag) << "]";
    os << "\n  v=(";
    for (std::size_t k = 0; k < p.vector.size(); ++k)
      os << (k ? ", " : "") << format_complex(p.vector[k]);
    os << ")\n";
  }
  os << "zero multiplicity (algebraic): " << r.zero_multiplicity << "\n";
  if (r.zero_geometric_multiplicity)
    os << "zero multiplicity (geometric): " << *r.zero_geometric_multiplicity << "\n";
  os << "max residual: " << format_number(r.max_residual) << "\n";
  os << "verified: " << (r.verified ? "true" : "false") << "\n";
}

inline void emit_report(std::ostream& os, const SpectrumReport& r, Format f)
{
  if (f == Format::json) {
    JsonWriter w(os);
    write_json(w, r);
    w.finish();
  } else if (f == Format::csv) {
    write_csv(os, r);
  } else {
    write_plain_report(os, r);
  }
}

}  // namespace detail

inline int cmd_eigen(const CliConfig& cfg, std::ostream& out)
{
  const double tol = detail::resolve_tolerance(cfg);
  const bool needs_bands = cfg.family == "T";
  if (!needs_bands && detail::has_band_params(cfg))
    throw UsageError("--a/--b/--c are only valid with --family T");

  SpectrumReport report;
  if (cfg.family == "R") {
    report = near_toeplitz_eigen(cfg.n, tol);
    if (cfg.n <= static_cast<int>(oracle::kMaxRankOrder))
      report.zero_geometric_multiplicity = oracle::geometric_multiplicity(build_R(cfg.n), 0.0);
  } else if (cfg.family == "K") {
    report = make_report("K_" + std::to_string(cfg.n), build_K(cfg.n), skew_toeplitz_eigen(cfg.n), tol);
  } else if (cfg.family == "T") {
    const Complex a = detail::band_param(cfg.a, "a");
    const Complex b = detail::band_param(cfg.b, "b");
    const Complex c = detail::band_param(cfg.c, "c");
    const std::string name = "T_" + std::to_string(cfg.n) + "(" + format_complex(a) + "," +
                             format_complex(b) + "," + format_complex(c) + ")";
    const bool real_symmetric = a == c && a.imag() == 0.0 && b.imag() == 0.0;
    auto pairs = real_symmetric ? symmetric_toeplitz_eigen(a.real(), b.real(), cfg.n)
                                : general_toeplitz_eigen(a, b, c, cfg.n);
    report = make_report(name, build_toeplitz(a, b, c, cfg.n), std::move(pairs), tol);
  } else {
    throw UsageError("no closed-form eigen-solver for family " + cfg.family +
                     "; supported families are R, K and T");
  }
  detail::emit_report(out, report, detail::format_of(cfg.format));
  return report.verified ? kExitOk : kExitCheckFailed;
}

struct VerifyRow {
  int n = 0;
  bool reduction = false;
  bool commutator = false;
  bool centro_skew = false;
  double max_residual = 0.0;
  bool residual_ok = false;
  bool spectrum = false;
  std::optional<int> rank;  ///< rank of R_n, n <= 64 only
  bool rank_ok = true;

  bool pass() const
  {
    return reduction && commutator && centro_skew && residual_ok && spectrum && rank_ok;
  }
};

inline VerifyRow verify_order(int n, double tol)
{
  VerifyRow row;
  row.n = n;
  const auto r = build_R(n);
  row.reduction = reduce_R(n).exact_match;
  row.commutator = commutator_check(n);
  row.centro_skew = is_centro_skew(r);
  const auto report = near_toeplitz_eigen(n, tol);
  row.max_residual = report.max_residual;
  row.residual_ok = report.verified;
  row.spectrum = oracle::spectrum_compare(report.eigenvalues(), r).pass;
  if (n <= static_cast<int>(oracle::kMaxRankOrder)) {
    row.rank = oracle::rank_small(r.to_dense());
    row.rank_ok = *row.rank == n - 1;
  }
  return row;
}

/// Orders are handed out to workers from a shared counter; rows land in
/// their slot so output stays in ascending n.
inline std::vector<VerifyRow> verify_range(OrderRange range, double tol)
{
  const auto count = static_cast<std::size_t>(range.hi - range.lo + 1);
  std::vector<VerifyRow> rows(count);
  std::atomic<std::size_t> next{0};
  const auto workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                        static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++)
          rows[k] = verify_order(range.lo + static_cast<int>(k), tol);
      });
    }
  }
  return rows;
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out)
{
  const double tol = detail::resolve_tolerance(cfg);
  if (cfg.family != "R") throw UsageError("verify only supports --family R");
  const auto range = parse_range(cfg.n_range);
  if (!range) throw UsageError("--n-range must look like LO:HI, got '" + cfg.n_range + "'");
  if (range->lo < 2) throw Error(ErrorKind::OrderTooSmall, "R_n is defined for n >= 2");
  if (range->hi > kVerifyMaxOrder)
    throw Error(ErrorKind::OrderTooLarge, "verify supports n <= " + std::to_string(kVerifyMaxOrder));
  if (range->lo > range->hi) throw UsageError("--n-range lower bound exceeds upper bound");

  const auto rows = verify_range(*range, tol);
  const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass(); });
  auto flag = [](bool b) { return b ? "true" : "false"; };

  switch (detail::format_of(cfg.format)) {
    case Format::json: {
      JsonWriter w(out);
      w.begin_object();
      w.key("lo").value(range->lo);
      w.key("hi").value(range->hi);
      w.key("rows").begin_array();
      for (const auto& r : rows) {
        w.begin_object(true);
        w.key("n").value(r.n);
        w.key("reduction").value(r.reduction);
        w.key("commutator").value(r.commutator);
        w.key("centro_skew").value(r.centro_skew);
        w.key("max_residual").value(r.max_residual);
        w.key("spectrum").value(r.spectrum);
        if (r.rank) w.key("rank").value(*r.rank);
        w.key("pass").value(r.pass());
        w.end_object();
      }
      w.end_array();
      w.key("pass").value(all);
      w.end_object();
      w.finish();
      break;
    }
    case Format::csv:
      out << "n,reduction,commutator,centro_skew,max_residual,spectrum,rank,pass\n";
      for (const auto& r : rows) {
        out << r.n << ',' << flag(r.reduction) << ',' << flag(r.commutator) << ','
            << flag(r.centro_skew) << ',' << format_number(r.max_residual) << ','
            << flag(r.spectrum) << ',' << (r.rank ? std::to_string(*r.rank) : "") << ','
            << flag(r.pass()) << '\n';
      }
      break;
    case Format::plain:
      out << "   n  reduction  commutator  centro_skew  max_residual            spectrum  rank  pass\n";
      for (const auto& r : rows) {
        out << std::setw(4) << r.n << "  " << std::setw(9) << flag(r.reduction) << "  "
            << std::setw(10) << flag(r.commutator) << "  " << std::setw(11) << flag(r.centro_skew)
            << "  " << std::setw(22) << std::left << format_number(r.max_residual) << std::right
            << "  " << std::setw(8) << flag(r.spectrum) << "  " << std::setw(4)
            << (r.rank ? std::to_string(*r.rank) : "-") << "  " << flag(r.pass()) << '\n';
      }
      out << (all ? "all orders pass\n" : "FAILURES present\n");
      break;
  }
  return all ? kExitOk : kExitCheckFailed;
}

inline int cmd_reduce(const CliConfig& cfg, std::ostream& out)
{
  const Format f = detail::format_of(cfg.format);
  if (cfg.identity == "symmetrization") {
    const auto cert = diag_symmetrize(detail::band_param(cfg.a, "a"), detail::band_param(cfg.b, "b"),
                                      detail::band_param(cfg.c, "c"), cfg.n);
    if (f == Format::json) {
      JsonWriter w(out);
      write_json(w, cert);
      w.finish();
    } else if (f == Format::csv) {
      out << "witness,row,col,re,im\n";
      write_csv_witness(out, "conjugated", cert.conjugated.to_dense());
      write_csv_witness(out, "symmetrized", cert.symmetrized.to_dense());
    } else {
      out << "d = " << format_complex(cert.d) << "\nD T D^-1 (band-wise):\n";
      write_plain(out, cert.conjugated.to_dense());
      out << "target T_n(sqrt(ac), b, sqrt(ac)):\n";
      write_plain(out, cert.symmetrized.to_dense());
      out << "residual: " << format_number(cert.residual) << " (bound " << format_number(cert.bound())
          << ")\n";
    }
    return cert.within_bound() ? kExitOk : kExitCheckFailed;
  }
  if (detail::has_band_params(cfg)) throw UsageError("--a/--b/--c are only valid with --identity symmetrization");

  if (cfg.identity == "commutator") {
    const auto cert = commutator_certificate(cfg.n);
    if (f == Format::json) {
      JsonWriter w(out);
      write_json(w, cert);
      w.finish();
    } else if (f == Format::csv) {
      out << "witness,row,col,re,im\n";
      write_csv_witness(out, "commutator", cert.commutator);
      write_csv_witness(out, "claimed", cert.claimed);
      write_csv_witness(out, "expected", cert.expected);
    } else {
      out << "KS - SK:\n";
      write_plain(out, cert.commutator);
      out << "S e_n e_{n-1}^T + (e_1 e_1^T - e_n e_n^T) S:\n";
      write_plain(out, cert.claimed);
      out << "e_1 e_1^T - e_n e_n^T:\n";
      write_plain(out, cert.expected);
      out << "exact_match: " << (cert.holds() ? "true" : "false") << "\n";
    }
    return cert.holds() ? kExitOk : kExitCheckFailed;
  }

  const auto cert = reduce_R(cfg.n);
  if (f == Format::json) {
    JsonWriter w(out);
    write_json(w, cert);
    w.finish();
  } else if (f == Format::csv) {
    out << "witness,row,col,re,im\n";
    write_csv_witness(out, "s", cert.s);
    write_csv_witness(out, "s_inv", cert.s_inv);
    write_csv_witness(out, "conjugated", cert.conjugated);
    write_csv_witness(out, "expected", cert.expected);
  } else {
    out << "S_" << cfg.n << ":\n";
    write_plain(out, cert.s);
    out << "S_" << cfg.n << "^-1:\n";
    write_plain(out, cert.s_inv);
    out << "S^-1 R S:\n";
    write_plain(out, cert.conjugated);
    out << "K + e_n e_{n-1}^T:\n";
    write_plain(out, cert.expected);
    out << "exact_match: " << (cert.exact_match ? "true" : "false") << "\n";
  }
  return cert.exact_match ? kExitOk : kExitCheckFailed;
}

inline int cmd_pattern(const CliConfig& cfg, std::ostream& out)
{
  std::ifstream in(cfg.matrix_file);
  if (!in) throw UsageError("cannot open matrix file '" + cfg.matrix_file + "'");
  const auto dense = dense_of(parse_matrix(in));
  const bool in_class = in_pattern_class(dense);
  const bool symmetric = is_centro_symmetric(dense);
  const bool skew = is_centro_skew(dense);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  switch (detail::format_of(cfg.format)) {
    case Format::json: {
      JsonWriter w(out);
      w.begin_object();
      w.key("n").value(dense.order());
      w.key("in_pattern_class").value(in_class);
      w.key("centro_symmetric").value(symmetric);
      w.key("centro_skew").value(skew);
      w.end_object();
      w.finish();
      break;
    }
    case Format::csv:
      out << "n,in_pattern_class,centro_symmetric,centro_skew\n"
          << dense.order() << ',' << flag(in_class) << ',' << flag(symmetric) << ',' << flag(skew)
          << '\n';
      break;
    case Format::plain:
      out << "n: " << dense.order() << "\nin pattern class: " << flag(in_class)
          << "\ncentro-symmetric: " << flag(symmetric) << "\ncentro-skew: " << flag(skew) << "\n";
      break;
  }
  return kExitOk;
}

struct ProvenanceRow {
  const char* family;
  const char* matrix;
  const char* closed_form;
  const char* established_by;
};

inline constexpr ProvenanceRow kProvenance[] = {
    {"R", "R_n = Tridiag(-1, (-1,0,...,0,1), 1)",
     "0 and 2i cos(j pi/n), j=1..n-1; v_j = S_n (u_j; 0)",
     "similarity S_n^-1 R_n S_n = K_n + e_n e_{n-1}^T, then K_{n-1} eigen-pairs"},
    {"K", "K_n = Z^T - Z = T_n(-1,0,1)", "2i cos(j pi/(n+1)); u_k = i^k sin(k j pi/(n+1))",
     "diagonal similarity to i T_n(1,0,1)"},
    {"T", "T_n(a,b,c), ac != 0", "b + 2 sqrt(ac) cos(j pi/(n+1)); D^-1 (sin(k j pi/(n+1)))_k",
     "diagonal similarity D = Diag(1,d,...,d^{n-1}) to T_n(sqrt(ac),b,sqrt(ac)); sine recurrence"},
    {"S", "S_n = I + Z", "S_n^-1 = I - Z + Z^2 - ... (entries (-1)^{i-j})", "Neumann series, Z nilpotent"},
    {"Z", "lower shift Z_n", "nilpotent", "definition"},
    {"E", "exchange E(i,j) = delta(i+j, n+1)", "E E = I; E P E = -P for centro-skew P", "definition"},
};

inline int cmd_info(const CliConfig& cfg, std::ostream& out)
{
  switch (detail::format_of(cfg.format)) {
    case Format::json: {
      JsonWriter w(out);
      w.begin_array();
      for (const auto& row : kProvenance) {
        w.begin_object();
        w.key("family").value(row.family);
        w.key("matrix").value(row.matrix);
        w.key("closed_form").value(row.closed_form);
        w.key("established_by").value(row.established_by);
        w.end_object();
      }
      w.end_array();
      w.finish();
      break;
    }
    case Format::csv:
      out << "family,matrix,closed_form,established_by\n";
      for (const auto& row : kProvenance)
        out << row.family << ",\"" << row.matrix << "\",\"" << row.closed_form << "\",\""
            << row.established_by << "\"\n";
      break;
    case Format::plain:
      for (const auto& row : kProvenance) {
        out << row.family << "  " << row.matrix << "\n   eigen: " << row.closed_form
            << "\n   via:   " << row.established_by << "\n";
      }
      break;
  }
  return kExitOk;
}

// ---- entry point ----------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Closed-form eigen-pairs of near-Toeplitz tridiagonal matrices", "neartoeplitz"};
  app.require_subcommand(1);
  CliConfig cfg;

  const std::vector<std::string> families = {"R", "K", "T", "S", "Z", "E"};
  const std::vector<std::string> formats = {"json", "csv", "plain"};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, csv or plain")->check(CLI::IsMember(formats));
    sub->add_option("--output", cfg.output, "write data to this file instead of stdout");
  };

  auto* eigen = app.add_subcommand("eigen", "closed-form eigen-pairs with residual verification");
  eigen->add_option("--family", cfg.family, "R, K or T")->required()->check(CLI::IsMember(families));
  eigen->add_option("--n", cfg.n, "matrix order")->required();
  eigen->add_option("--a", cfg.a, "subdiagonal value (family T)");
  eigen->add_option("--b", cfg.b, "diagonal value (family T)");
  eigen->add_option("--c", cfg.c, "superdiagonal value (family T)");
  eigen->add_option("--tol", cfg.tol, "residual tolerance");
  common(eigen);

  auto* verify = app.add_subcommand("verify", "sweep every identity and spectrum check over a range of n");
  verify->add_option("--n-range", cfg.n_range, "LO:HI, inclusive, within 2:512")->required();
  verify->add_option("--family", cfg.family, "only R")->check(CLI::IsMember(families));
  verify->add_option("--tol", cfg.tol, "residual tolerance");
  common(verify);

  auto* reduce = app.add_subcommand("reduce", "print the witnesses of a similarity identity");
  reduce->add_option("--n", cfg.n, "matrix order")->required();
  reduce->add_option("--identity", cfg.identity, "reduction, commutator or symmetrization")
      ->check(CLI::IsMember({"reduction", "commutator", "symmetrization"}));
  reduce->add_option("--a", cfg.a, "subdiagonal value (symmetrization)");
  reduce->add_option("--b", cfg.b, "diagonal value (symmetrization)");
  reduce->add_option("--c", cfg.c, "superdiagonal value (symmetrization)");
  common(reduce);

  auto* pattern = app.add_subcommand("pattern", "sign-pattern class and centro-symmetry of a matrix file");
  pattern->add_option("matrix", cfg.matrix_file, "JSON matrix file")->required();
  common(pattern);

  auto* info = app.add_subcommand("info", "which closed form backs each family");
  info->add_option("--format", cfg.format, "json, csv or plain")->check(CLI::IsMember(formats));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::ostringstream data;
  int code = kExitOk;
  try {
    if (*eigen) code = cmd_eigen(cfg, data);
    else if (*verify) code = cmd_verify(cfg, data);
    else if (*reduce) code = cmd_reduce(cfg, data);
    else if (*pattern) code = cmd_pattern(cfg, data);
    else code = cmd_info(cfg, data);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cfg.output.empty()) {
    out << data.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kExitUsage;
    }
    file << data.str();
  }
  return code;
}

}  // namespace neartoeplitz::cli

#endif  // NEARTOEPLITZ_CLI_HPP
