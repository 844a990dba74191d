#pragma once

/**
 * @file verdict.hpp
 * @brief Outcome of one claim check, and the stable claim-ID vocabulary used
 *        in results files and on the command line.
 *
 * Exact claims (identities, non-asymptotic inequalities) resolve to holds or
 * fails; a strict floating inequality whose margin does not clear its error
 * bound resolves to indeterminate. Claims stated only up to an unspecified
 * constant are report-only ratios.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "fft.hpp"

namespace subsum {

using BigInt = boost::multiprecision::cpp_int;

enum class Outcome { holds, fails, report_only, indeterminate };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::report_only: return "report-only";
    case Outcome::indeterminate: return "indeterminate-numeric";
  }
  return "?";
}

inline Outcome outcome_from_string(std::string_view s) {
  for (Outcome o : {Outcome::holds, Outcome::fails, Outcome::report_only, Outcome::indeterminate})
    if (to_string(o) == s) return o;
  throw CorruptionError("unknown verdict outcome '" + std::string(s) + "'");
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Verdict {
  std::string claim_id;
  double lhs = kNaN;
  double rhs = kNaN;
  double ratio = kNaN;
  Outcome pass = Outcome::report_only;
  double margin = kNaN;

  bool failed() const { return pass == Outcome::fails; }
};

enum class ClaimKind { exact, report };

struct ClaimInfo {
  std::string_view id;
  ClaimKind kind;
  bool subgroup;  // part of the per-(p, d) sweep record
  std::string_view statement;
};

// clang-format off
inline constexpr ClaimInfo kClaims[] = {
    {"lemma-3.1-E3",          ClaimKind::exact,  false, "sum_{s in A-A} E(A, A_s) = E3(A)"},
    {"lemma-3.1-E4",          ClaimKind::exact,  false, "sum_{s,t in A-A} E(A_s, A_t) = E4(A)"},
    {"lemma-3.1-swap",        ClaimKind::exact,  false, "(A_s o A_s)(t) = (A_t o A_t)(s) for s,t in A-A"},
    {"cor-3.2-minus",         ClaimKind::exact,  false, "sum_{s!=0} |A - A_s| >= |A|^6 / (2 E3(A))"},
    {"cor-3.2-plus",          ClaimKind::exact,  false, "sum_{s!=0} |A + A_s| >= |A|^6 / (2 E3(A))"},
    {"cor-3.2-minus-E4",      ClaimKind::exact,  false, "sum_{s,t!=0} |A_s - A_t| >= |A|^8 / (4 E4(A))"},
    {"cor-3.2-plus-E4",       ClaimKind::exact,  false, "sum_{s,t!=0} |A_s + A_t| >= |A|^8 / (4 E4(A))"},
    {"thm-1.2",               ClaimKind::exact,  false, "|A||B| > p, B = -B or B n -B = {} => 8AB = F_p"},
    {"mass-identity",         ClaimKind::exact,  true,  "sum_s (R o R)(s) = |R|^2"},
    {"lemma-2.1",             ClaimKind::exact,  true,  "max_{xi!=0} |Q^(xi)| < sqrt(|Q| p / |R|), Q = R"},
    {"lemma-2.1-diff",        ClaimKind::exact,  true,  "same, Q = (R-R) minus {0}"},
    {"lemma-2.1-sum",         ClaimKind::exact,  true,  "same, Q = (R+R) minus {0}"},
    {"lemma-2.4",             ClaimKind::report, true,  "max |Q^| / (|Q|^{3/4} p^{1/4} |R|^{-3/8}), Q = R"},
    {"lemma-2.4-diff",        ClaimKind::report, true,  "same, Q = (R-R) minus {0}"},
    {"lemma-2.4-sum",         ClaimKind::report, true,  "same, Q = (R+R) minus {0}"},
    {"cor-2.5",               ClaimKind::exact,  true,  "rho(R) < sqrt(p)"},
    {"cor-2.5-ratio",         ClaimKind::report, true,  "rho(R) / min(p^{1/4}|R|^{3/8}, p^{1/8}|R|^{5/8})"},
    {"lemma-2.3",             ClaimKind::report, true,  "E(R) / |R|^{5/2}"},
    {"lemma-3.3-E3",          ClaimKind::report, true,  "E3(R) / (|R|^3 log|R|)"},
    {"lemma-3.3-E4",          ClaimKind::report, true,  "(E4(R) - |R|^4) / |R|^{11/3}"},
    {"thm-1.1-baseline-minus",ClaimKind::report, true,  "|R-R| / |R|^{3/2}"},
    {"thm-1.1-baseline-plus", ClaimKind::report, true,  "|R+R| / |R|^{3/2}"},
    {"thm-1.1-minus",         ClaimKind::report, true,  "|R-R| / (|R| p^{1/3} (log|R|)^{-1/3})"},
    {"thm-1.1-plus",          ClaimKind::report, true,  "|R+R| / (|R| p^{1/3} (log|R|)^{-1/3})"},
    {"thm-1.1-large-minus",   ClaimKind::report, true,  "|R-R| / min{n p^{1/3} L^{-1/3}, max{n^{7/3} p^{-1/3} L^{-2/3}, n^{27/14} p^{-1/7} L^{-4/7}}}"},
    {"thm-1.1-large-plus",    ClaimKind::report, true,  "|R+R| / (same bound)"},
    {"thm-1.1-slice",         ClaimKind::exact,  true,  "(S o S)(s) >= |R - R_s| for all s in S = R-R"},
    {"thm-2.2",               ClaimKind::report, true,  "max_Q sum_{xi in Q} (R o R)(xi) / (|R| |Q|^{2/3})"},
    {"thm-2.6",               ClaimKind::exact,  true,  "l >= 2, |R| > p^{(l+1)/(2l)} => F_p^* in lR"},
    {"thm-2.7",               ClaimKind::report, true,  "rho(R) / |R|"},
    {"thm-4.1",               ClaimKind::report, true,  "basis order of F_p^* vs 6, for |R| >= p^0.494"},
    {"remark-4R-half",        ClaimKind::report, true,  "|4R| vs p/2, for |R| >= p^{11/23}"},
    {"cor-1.3",               ClaimKind::exact,  true,  "|R| > sqrt(p) => 8R = F_p"},
    {"remark-3-popular",      ClaimKind::report, true,  "#{s != 0 : (R o R)(s) >= |R|^2/(10p)} / (|R-R| - 1)"},
    {"oracle-energy",         ClaimKind::exact,  false, "pair-histogram E(R) = spectrum E(R)"},
    {"oracle-sumset",         ClaimKind::exact,  false, "double-loop R +- R = fast R +- R"},
    {"oracle-dft",            ClaimKind::exact,  false, "direct |R^(xi)| within certified error of the fast path"},
};
// clang-format on

inline const ClaimInfo* find_claim(std::string_view id) {
  for (const auto& c : kClaims)
    if (c.id == id) return &c;
  return nullptr;
}

inline std::vector<std::string> default_subgroup_claims() {
  std::vector<std::string> out;
  for (const auto& c : kClaims)
    if (c.subgroup) out.emplace_back(c.id);
  return out;
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline double safe_ratio(double num, double den) {
  if (!std::isfinite(num) || !std::isfinite(den) || den == 0.0) return kNaN;
  return num / den;
}

/// lhs == rhs, exact.
inline Verdict exact_equal(std::string id, const BigInt& lhs, const BigInt& rhs) {
  Verdict v{std::move(id), to_double(lhs), to_double(rhs)};
  v.ratio = safe_ratio(v.lhs, v.rhs);
  v.pass = lhs == rhs ? Outcome::holds : Outcome::fails;
  v.margin = lhs == rhs ? 0.0 : -std::abs(to_double(lhs - rhs));
  return v;
}

/// lhs >= num/den, exact (den > 0).
inline Verdict exact_at_least(std::string id, const BigInt& lhs, const BigInt& num, const BigInt& den) {
  Verdict v{std::move(id), to_double(lhs), to_double(num) / to_double(den)};
  v.ratio = safe_ratio(v.lhs, v.rhs);
  v.pass = lhs * den >= num ? Outcome::holds : Outcome::fails;
  v.margin = v.lhs - v.rhs;
  return v;
}

/// lhs < rhs where lhs carries absolute error lhs_err and rhs was computed
/// in double from exact inputs (one sqrt and a few products: 4u relative).
inline Verdict certified_less(std::string id, double lhs, double lhs_err, double rhs) {
  Verdict v{std::move(id), lhs, rhs};
  v.ratio = safe_ratio(lhs, rhs);
  const double err = lhs_err + 4 * numeric::kUnitRoundoff * std::abs(rhs);
  v.margin = (rhs - lhs) - err;
  if (v.margin > 0)
    v.pass = Outcome::holds;
  else if (rhs - lhs + err < 0)
    v.pass = Outcome::fails;
  else
    v.pass = Outcome::indeterminate;
  return v;
}

inline Verdict report(std::string id, double lhs, double rhs) {
  Verdict v{std::move(id), lhs, rhs};
  v.ratio = safe_ratio(lhs, rhs);
  v.pass = Outcome::report_only;
  return v;
}

}  // namespace subsum
