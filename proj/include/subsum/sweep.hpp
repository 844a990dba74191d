#pragma once

/**
 * @file sweep.hpp
 * @brief Sweep driver over (p, d) cells with JSONL persistence and resume,
 *        the randomized general-set corpus, and CSV aggregation.
 */

#include <atomic>
#include <csignal>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dense_set.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "invariant.hpp"
#include "modular.hpp"
#include "oracle.hpp"
#include "verdict.hpp"
#include "verifier.hpp"

namespace subsum {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// d filter
// ---------------------------------------------------------------------------

/// One bound d >= c p^e or d <= c p^e (strict forms allowed). The threshold
/// c p^e is evaluated in long double; non-strict bounds accept d within a
/// relative 1e-12 of it so that exact boundary cases such as 0.5 * 1000^(2/3)
/// = 50 are admitted.
struct DBound {
  enum class Op { ge, gt, le, lt } op = Op::ge;
  double coef = 1.0;
  double exponent = 0.0;

  bool admits(u64 p, u64 d) const {
    const long double t = static_cast<long double>(coef) *
                          std::pow(static_cast<long double>(p), static_cast<long double>(exponent));
    const long double x = static_cast<long double>(d);
    const long double slack = 1e-12L * t;
    switch (op) {
      case Op::ge: return x >= t - slack;
      case Op::gt: return x > t + slack;
      case Op::le: return x <= t + slack;
      case Op::lt: return x < t - slack;
    }
    return false;
  }
};

inline constexpr const char* kDefaultDFilter = "d<=0.5*p^(2/3)";

/**
 * Comma-separated conjunction of clauses. A clause is `all` or
 * `d OP EXPR`, OP in {>=, >, <=, <, ≥, ≤}, EXPR one of `X`, `p^E`, `X*p^E`,
 * with E a number or `(a/b)`.
 */
class DFilter {
 public:
  DFilter() = default;

  static DFilter parse(const std::string& text) {
    DFilter f;
    f.text_ = text;
    std::string s;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == ' ' || text[i] == '\t') continue;
      // UTF-8 ≥ (E2 89 A5) and ≤ (E2 89 A4)
      if (text.compare(i, 3, "\xE2\x89\xA5") == 0) {
        s += ">=";
        i += 2;
        continue;
      }
      if (text.compare(i, 3, "\xE2\x89\xA4") == 0) {
        s += "<=";
        i += 2;
        continue;
      }
      s += text[i];
    }
    if (s.empty()) throw UsageError("dfilter: empty expression");
    std::stringstream ss(s);
    std::string clause;
    while (std::getline(ss, clause, ',')) f.bounds_.push_back(parse_clause(clause, text));
    return f;
  }

  void add(DBound b) { bounds_.push_back(b); }

  bool admits(u64 p, u64 d) const {
    for (const auto& b : bounds_)
      if (!b.admits(p, d)) return false;
    return true;
  }

  const std::string& text() const { return text_; }

 private:
  static double number(const std::string& s, const std::string& whole) {
    if (s.empty()) throw UsageError("dfilter: missing number in '" + whole + "'");
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw UsageError("dfilter: bad number '" + s + "' in '" + whole + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) throw UsageError("dfilter: bad number '" + s + "' in '" + whole + "'");
    return v;
  }

  static double exponent(const std::string& s, const std::string& whole) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
      const std::string inner = s.substr(1, s.size() - 2);
      const auto slash = inner.find('/');
      if (slash == std::string::npos) return number(inner, whole);
      const double den = number(inner.substr(slash + 1), whole);
      if (den == 0) throw UsageError("dfilter: zero denominator in '" + whole + "'");
      return number(inner.substr(0, slash), whole) / den;
    }
    return number(s, whole);
  }

  static DBound parse_clause(const std::string& c, const std::string& whole) {
    DBound b;
    if (c == "all") {
      b.op = DBound::Op::ge;
      b.coef = 0.0;
      return b;
    }
    if (c.size() < 3 || c[0] != 'd') throw UsageError("dfilter: cannot parse clause '" + c + "'");
    std::size_t k = 1;
    if (c.compare(1, 2, ">=") == 0) {
      b.op = DBound::Op::ge;
      k = 3;
    } else if (c.compare(1, 2, "<=") == 0) {
      b.op = DBound::Op::le;
      k = 3;
    } else if (c[1] == '>') {
      b.op = DBound::Op::gt;
      k = 2;
    } else if (c[1] == '<') {
      b.op = DBound::Op::lt;
      k = 2;
    } else {
      throw UsageError("dfilter: missing comparison in '" + c + "'");
    }
    const std::string rhs = c.substr(k);
    const auto at = rhs.find("p^");
    if (at == std::string::npos) {
      b.coef = number(rhs, whole);
      b.exponent = 0.0;
      return b;
    }
    if (at == 0) {
      b.coef = 1.0;
    } else {
      if (rhs[at - 1] != '*') throw UsageError("dfilter: expected '*' before p^ in '" + c + "'");
      b.coef = number(rhs.substr(0, at - 1), whole);
    }
    b.exponent = exponent(rhs.substr(at + 2), whole);
    return b;
  }

  std::string text_ = "all";
  std::vector<DBound> bounds_;
};

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline double number_from(const Json& j) {
  if (j.is_null()) return kNaN;
  if (!j.is_number()) throw CorruptionError("expected a number");
  return j.get<double>();
}

inline Json big_json(u128 v) {
  if (v <= std::numeric_limits<u64>::max()) return Json(static_cast<u64>(v));
  return Json(to_string(v));
}

inline u128 big_from(const Json& j) {
  if (j.is_number_unsigned()) return j.get<u64>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<u64>(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty()) throw CorruptionError("empty integer string");
    u128 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw CorruptionError("bad integer string '" + s + "'");
      v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
  }
  throw CorruptionError("expected a nonnegative integer");
}

inline Json optional_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

inline std::optional<int> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number_integer()) throw CorruptionError("expected an integer or null");
  return j.get<int>();
}

}  // namespace detail

inline Json to_json(const Verdict& v) {
  Json j;
  j["claim_id"] = v.claim_id;
  j["lhs"] = detail::number_or_null(v.lhs);
  j["rhs"] = detail::number_or_null(v.rhs);
  j["ratio"] = detail::number_or_null(v.ratio);
  j["pass"] = std::string(to_string(v.pass));
  j["margin"] = detail::number_or_null(v.margin);
  return j;
}

inline Verdict verdict_from_json(const Json& j) {
  if (!j.is_object()) throw CorruptionError("verdict is not an object");
  Verdict v;
  v.claim_id = j.at("claim_id").get<std::string>();
  v.lhs = detail::number_from(j.at("lhs"));
  v.rhs = detail::number_from(j.at("rhs"));
  v.ratio = detail::number_from(j.at("ratio"));
  v.pass = outcome_from_string(j.at("pass").get<std::string>());
  v.margin = detail::number_from(j.at("margin"));
  return v;
}

inline Json to_json(const ExperimentRecord& r) {
  Json j;
  j["p"] = r.p;
  j["d"] = r.d;
  j["g"] = r.g;
  j["card_diff"] = r.card_diff;
  j["card_sum"] = r.card_sum;
  j["e2"] = detail::big_json(r.e2);
  j["e3"] = detail::big_json(r.e3);
  j["e4"] = detail::big_json(r.e4);
  j["rho_R"] = detail::number_or_null(r.rho_R);
  j["rho_S"] = detail::number_or_null(r.rho_S);
  j["err"] = detail::number_or_null(r.err);
  j["basis_fpstar"] = detail::optional_json(r.basis_fpstar);
  j["basis_fp"] = detail::optional_json(r.basis_fp);
  j["basis_half"] = detail::optional_json(r.basis_half);
  Json vs = Json::array();
  for (const auto& v : r.verdicts) vs.push_back(to_json(v));
  j["verdicts"] = std::move(vs);
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

/// Throws CorruptionError on any schema violation.
inline ExperimentRecord record_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw CorruptionError("record is not an object");
    ExperimentRecord r;
    r.p = j.at("p").get<u64>();
    r.d = j.at("d").get<u64>();
    r.g = j.at("g").get<u64>();
    r.card_diff = j.at("card_diff").get<u64>();
    r.card_sum = j.at("card_sum").get<u64>();
    r.e2 = detail::big_from(j.at("e2"));
    r.e3 = detail::big_from(j.at("e3"));
    r.e4 = detail::big_from(j.at("e4"));
    r.rho_R = detail::number_from(j.at("rho_R"));
    r.rho_S = detail::number_from(j.at("rho_S"));
    r.err = detail::number_from(j.at("err"));
    r.basis_fpstar = detail::optional_from(j.at("basis_fpstar"));
    r.basis_fp = detail::optional_from(j.at("basis_fp"));
    r.basis_half = detail::optional_from(j.at("basis_half"));
    const auto& vs = j.at("verdicts");
    if (!vs.is_array()) throw CorruptionError("verdicts is not an array");
    for (const auto& v : vs) r.verdicts.push_back(verdict_from_json(v));
    r.wall_time_ms = detail::number_from(j.at("wall_time_ms"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptionError(std::string("record schema: ") + e.what());
  }
}

/// Every record of a JSONL results file. Blank lines are not allowed.
inline std::vector<ExperimentRecord> read_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open results file '" + path + "'");
  std::vector<ExperimentRecord> out;
  std::set<std::pair<u64, u64>> keys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    if (in.eof()) throw CorruptionError(where + ": truncated record (no trailing newline)");
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw CorruptionError(where + ": malformed JSON");
    }
    try {
      out.push_back(record_from_json(j));
    } catch (const CorruptionError& e) {
      throw CorruptionError(where + ": " + e.what());
    }
    if (!keys.emplace(out.back().p, out.back().d).second)
      throw CorruptionError(where + ": duplicate key (" + std::to_string(out.back().p) + ", " +
                            std::to_string(out.back().d) + ")");
  }
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return out;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
  u64 p_min = 2;
  u64 p_max = 100;
  std::optional<u64> d_min;
  std::optional<u64> d_max;
  std::string d_filter = kDefaultDFilter;
  std::vector<std::string> claims;  // empty: every subgroup claim
  int lmax = 10;
  int samples = 16;
  unsigned jobs = 1;
  std::string out_path = "results.jsonl";
  bool resume = false;
  u64 seed = 1;
  bool timing = false;
  std::optional<u64> limit;  // stop after this many new records
};

struct ClaimStats {
  u64 holds = 0, fails = 0, report_only = 0, indeterminate = 0, flagged = 0;
  double min_ratio = kNaN, max_ratio = kNaN;
  std::pair<u64, u64> argmin{0, 0}, argmax{0, 0};
  std::vector<std::pair<u64, u64>> flagged_cells;
};

struct SweepSummary {
  std::string d_filter;
  u64 cells = 0;        // admitted (p, d) cells in range
  u64 records = 0;      // records in the output file
  u64 computed = 0;     // new records this run
  u64 skipped = 0;      // already present (resume)
  bool interrupted = false;
  std::map<std::string, ClaimStats> claims;

  bool any_failed() const {
    for (const auto& [id, s] : claims)
      if (s.fails) return true;
    return false;
  }
  int exit_code() const { return any_failed() ? kExitClaimFailed : kExitOk; }
};

/// Flag rule for the desk checks: thm-4.1 order above 6 (or beyond lmax),
/// remark-4R-half with |4R| < p/2.
inline bool is_flagged(const Verdict& v) {
  if (v.claim_id == "thm-4.1") return !(v.lhs <= 6.0);
  if (v.claim_id == "remark-4R-half") return v.lhs < v.rhs;
  return false;
}

inline void accumulate(SweepSummary& s, const ExperimentRecord& r) {
  ++s.records;
  for (const auto& v : r.verdicts) {
    auto& c = s.claims[v.claim_id];
    switch (v.pass) {
      case Outcome::holds: ++c.holds; break;
      case Outcome::fails: ++c.fails; break;
      case Outcome::report_only: ++c.report_only; break;
      case Outcome::indeterminate: ++c.indeterminate; break;
    }
    if (is_flagged(v)) {
      ++c.flagged;
      c.flagged_cells.emplace_back(r.p, r.d);
    }
    if (std::isfinite(v.ratio)) {
      if (!(v.ratio >= c.min_ratio)) {
        c.min_ratio = v.ratio;
        c.argmin = {r.p, r.d};
      }
      if (!(v.ratio <= c.max_ratio)) {
        c.max_ratio = v.ratio;
        c.argmax = {r.p, r.d};
      }
    }
  }
}

inline void print_summary(std::ostream& os, const SweepSummary& s) {
  os << "dfilter: " << s.d_filter << "\n";
  os << "cells: " << s.cells << "  records: " << s.records << "  computed: " << s.computed
     << "  skipped: " << s.skipped << (s.interrupted ? "  (interrupted)" : "") << "\n";
  os << std::left << std::setw(24) << "claim" << std::right << std::setw(9) << "holds" << std::setw(7)
     << "fails" << std::setw(9) << "report" << std::setw(7) << "indet" << std::setw(8) << "flagged"
     << std::setw(14) << "min ratio" << std::setw(16) << "at (p,d)" << std::setw(14) << "max ratio"
     << std::setw(16) << "at (p,d)" << "\n";
  auto cell = [](std::pair<u64, u64> c) {
    return "(" + std::to_string(c.first) + "," + std::to_string(c.second) + ")";
  };
  for (const auto& [id, c] : s.claims) {
    os << std::left << std::setw(24) << id << std::right << std::setw(9) << c.holds << std::setw(7) << c.fails
       << std::setw(9) << c.report_only << std::setw(7) << c.indeterminate << std::setw(8) << c.flagged;
    if (std::isfinite(c.min_ratio))
      os << std::setw(14) << std::setprecision(6) << c.min_ratio << std::setw(16) << cell(c.argmin)
         << std::setw(14) << c.max_ratio << std::setw(16) << cell(c.argmax);
    os << "\n";
  }
  for (const auto& [id, c] : s.claims) {
    if (!c.flagged) continue;
    os << "FLAGGED " << id << " (" << c.flagged << " cells, findings not failures):";
    std::size_t shown = 0;
    for (const auto& fc : c.flagged_cells) {
      if (shown++ == 20) {
        os << " ...";
        break;
      }
      os << " " << cell(fc);
    }
    os << "\n";
  }
  for (const auto& [id, c] : s.claims)
    if (c.indeterminate)
      os << "note: " << c.indeterminate << " indeterminate-numeric verdicts for " << id
         << "; recompute those cells at higher precision\n";
  if (s.any_failed()) os << "RESULT: some exact claim FAILED\n";
  else os << "RESULT: all exact claims hold\n";
}

namespace detail {

inline std::atomic<bool>& stop_requested() {
  static std::atomic<bool> flag{false};
  return flag;
}

inline void on_stop_signal(int) { stop_requested().store(true); }

class SignalGuard {
 public:
  SignalGuard() {
    stop_requested().store(false);
    old_int_ = std::signal(SIGINT, on_stop_signal);
    old_term_ = std::signal(SIGTERM, on_stop_signal);
  }
  ~SignalGuard() {
    std::signal(SIGINT, old_int_);
    std::signal(SIGTERM, old_term_);
  }
  SignalGuard(const SignalGuard&) = delete;
  SignalGuard& operator=(const SignalGuard&) = delete;

 private:
  void (*old_int_)(int);
  void (*old_term_)(int);
};

struct PrimeContext {
  std::shared_ptr<const FieldContext> field;
  TwiddleTable twiddles;
  explicit PrimeContext(u64 p) : field(FieldContext::make(p)), twiddles(p) {}
};

// Built once per prime, shared by the workers handling its cells, dropped
// when the last cell of the prime is done.
class PrimeCache {
 public:
  std::shared_ptr<const PrimeContext> get(u64 p, u64 cells_for_p) {
    std::shared_future<std::shared_ptr<const PrimeContext>> fut;
    bool build = false;
    std::promise<std::shared_ptr<const PrimeContext>> promise;
    {
      std::lock_guard lock(mu_);
      auto it = entries_.find(p);
      if (it == entries_.end()) {
        fut = promise.get_future().share();
        entries_.emplace(p, Entry{fut, cells_for_p});
        build = true;
      } else {
        fut = it->second.future;
      }
    }
    if (build) {
      try {
        promise.set_value(std::make_shared<const PrimeContext>(p));
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
    }
    return fut.get();
  }

  void release(u64 p) {
    std::lock_guard lock(mu_);
    auto it = entries_.find(p);
    if (it != entries_.end() && --it->second.remaining == 0) entries_.erase(it);
  }

 private:
  struct Entry {
    std::shared_future<std::shared_ptr<const PrimeContext>> future;
    u64 remaining;
  };
  std::mutex mu_;
  std::map<u64, Entry> entries_;
};

inline void validate_claims(const std::vector<std::string>& claims, bool subgroup_only) {
  for (const auto& id : claims) {
    const auto* c = find_claim(id);
    if (!c) throw UsageError("unknown claim id '" + id + "'");
    if (subgroup_only && !c->subgroup)
      throw UsageError("claim '" + id + "' is not part of the subgroup sweep (see verify-corpus)");
  }
}

}  // namespace detail

/// (p, d) cells in (p, d) order.
inline std::vector<std::pair<u64, u64>> sweep_cells(const SweepConfig& cfg, const DFilter& filter) {
  std::vector<std::pair<u64, u64>> cells;
  if (cfg.p_min > cfg.p_max) return cells;
  for (u64 p : primes_in_range(cfg.p_min, cfg.p_max))
    for (u64 d : divisors(p - 1)) {
      if (cfg.d_min && d < *cfg.d_min) continue;
      if (cfg.d_max && d > *cfg.d_max) continue;
      if (filter.admits(p, d)) cells.emplace_back(p, d);
    }
  return cells;
}

inline SweepSummary run_sweep(const SweepConfig& cfg, std::ostream* log = nullptr) {
  if (cfg.p_min < 2) throw UsageError("--pmin must be at least 2");
  if (cfg.p_min > cfg.p_max) throw UsageError("--pmin must not exceed --pmax");
  if (cfg.lmax < 1) throw UsageError("--lmax must be at least 1");
  if (cfg.samples < 1) throw UsageError("--samples must be at least 1");
  if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
  detail::validate_claims(cfg.claims, true);
  const DFilter filter = DFilter::parse(cfg.d_filter);

  SweepSummary summary;
  summary.d_filter = filter.text();
  if (cfg.d_min) summary.d_filter += ", d>=" + std::to_string(*cfg.d_min);
  if (cfg.d_max) summary.d_filter += ", d<=" + std::to_string(*cfg.d_max);
  const auto all_cells = sweep_cells(cfg, filter);
  summary.cells = all_cells.size();

  std::set<std::pair<u64, u64>> done;
  namespace fs = std::filesystem;
  if (cfg.resume && fs::exists(cfg.out_path)) {
    for (const auto& r : read_results(cfg.out_path)) {
      done.emplace(r.p, r.d);
      accumulate(summary, r);
    }
  }

  std::vector<std::pair<u64, u64>> todo;
  for (const auto& c : all_cells)
    if (!done.count(c)) todo.push_back(c);
  summary.skipped = all_cells.size() - todo.size();

  std::ofstream out(cfg.out_path, cfg.resume ? std::ios::app | std::ios::binary
                                             : std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot open '" + cfg.out_path + "' for writing");

  std::map<u64, u64> per_prime;
  for (const auto& c : todo) ++per_prime[c.first];

  ReportOptions opts;
  opts.lmax = cfg.lmax;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.claims = cfg.claims;
  opts.timing = cfg.timing;

  detail::SignalGuard guard;
  detail::PrimeCache cache;
  std::atomic<std::size_t> next{0};
  std::mutex write_mu;
  std::map<std::size_t, std::pair<std::string, ExperimentRecord>> pending;
  std::size_t next_write = 0;
  u64 written = 0;
  const u64 limit = cfg.limit.value_or(std::numeric_limits<u64>::max());
  std::atomic<bool> halt{false};
  std::exception_ptr error;

  auto worker = [&] {
    try {
      while (!halt.load() && !detail::stop_requested().load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= todo.size()) break;
        const auto [p, d] = todo[i];
        auto ctx = cache.get(p, per_prime[p]);
        ExperimentRecord rec = subgroup_report(SubgroupDescriptor(ctx->field, d), opts, &ctx->twiddles);
        cache.release(p);
        std::string line = to_json(rec).dump() + "\n";

        std::lock_guard lock(write_mu);
        pending.emplace(i, std::make_pair(std::move(line), std::move(rec)));
        while (!pending.empty() && pending.begin()->first == next_write && written < limit) {
          auto node = pending.extract(pending.begin());
          out << node.mapped().first;
          out.flush();
          if (!out) throw IoError("write failed on '" + cfg.out_path + "'");
          accumulate(summary, node.mapped().second);
          ++written;
          ++next_write;
        }
        if (written >= limit) halt.store(true);
      }
    } catch (...) {
      std::lock_guard lock(write_mu);
      if (!error) error = std::current_exception();
      halt.store(true);
    }
  };

  std::vector<std::thread> threads;
  const unsigned n = std::max(1u, std::min<unsigned>(cfg.jobs, std::max<std::size_t>(todo.size(), 1)));
  for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  summary.computed = written;
  summary.interrupted = written < todo.size();
  if (log) print_summary(*log, summary);
  return summary;
}

// ---------------------------------------------------------------------------
// Randomized general-set corpus
// ---------------------------------------------------------------------------

struct CorpusSummary {
  u64 verdicts = 0;
  u64 failures = 0;
  u64 glibichuk_checked = 0;
  int exit_code() const { return failures ? kExitClaimFailed : kExitOk; }
};

namespace detail {

inline DenseSet random_subset(std::mt19937_64& rng, u64 p, u64 size, u64 lo = 0) {
  std::vector<u64> pool;
  for (u64 x = lo; x < p; ++x) pool.push_back(x);
  // Partial Fisher-Yates with our own index draw for portability.
  for (u64 i = 0; i < size && i < pool.size(); ++i) std::swap(pool[i], pool[i + uniform_below(rng, pool.size() - i)]);
  pool.resize(std::min<u64>(size, pool.size()));
  return DenseSet::from_elements(p, pool);
}

// B = -B of the requested approximate size, built from ± pairs in F_p^*.
inline DenseSet random_symmetric(std::mt19937_64& rng, u64 p, u64 pairs) {
  std::vector<u64> xs;
  const DenseSet half = random_subset(rng, p, pairs, 1);
  half.for_each([&](u64 x) {
    xs.push_back(x);
    xs.push_back(p - x);
  });
  return DenseSet::from_elements(p, xs);
}

}  // namespace detail

/**
 * Per trial: a random prime p <= p_cap and a random A with 2 <= |A| <= 40;
 * the three slice identities, both slice lower bounds for both signs, and
 * the 8AB = F_p check on a random symmetric B with |A||B| > p when one fits.
 */
inline CorpusSummary verify_corpus(u64 seed, u64 trials, u64 p_cap, std::ostream& os) {
  if (trials < 1) throw UsageError("--trials must be at least 1");
  if (p_cap < 3) throw UsageError("--pcap must be at least 3");
  const auto primes = primes_in_range(3, p_cap);
  CorpusSummary s;
  os << "verify-corpus seed=" << seed << " trials=" << trials << " pcap=" << p_cap << "\n";
  for (u64 t = 0; t < trials; ++t) {
    auto rng = detail::seeded_rng(seed, t, p_cap);
    const u64 p = primes[detail::uniform_below(rng, primes.size())];
    const u64 size = 2 + detail::uniform_below(rng, std::min<u64>(40, p) - 1);
    const DenseSet a = detail::random_subset(rng, p, size);

    std::vector<Verdict> vs = verify_exact_identities(a);
    for (Sign sign : {Sign::minus, Sign::plus})
      for (auto& v : verify_slice_lower_bounds(a, sign, seed)) vs.push_back(std::move(v));

    // Smallest number of ± pairs with |A||B| > p.
    const u64 need = p / (2 * a.size()) + 1;
    if (need <= (p - 1) / 2) {
      const u64 pairs = need + detail::uniform_below(rng, (p - 1) / 2 - need + 1);
      vs.push_back(verify_glibichuk(a, detail::random_symmetric(rng, p, pairs)));
      ++s.glibichuk_checked;
    }

    u64 bad = 0;
    for (const auto& v : vs) bad += v.failed();
    s.verdicts += vs.size();
    s.failures += bad;
    os << "trial " << t << " p=" << p << " |A|=" << a.size() << " verdicts=" << vs.size()
       << (bad ? " FAIL" : " ok") << "\n";
    for (const auto& v : vs)
      if (v.failed()) os << "  " << v.claim_id << " fails: lhs=" << v.lhs << " rhs=" << v.rhs << "\n";
  }
  os << "total verdicts=" << s.verdicts << " failures=" << s.failures << "\n";
  if (s.failures)
    os << "reproduce with: verify-corpus --seed " << seed << " --trials " << trials << " --pcap " << p_cap
       << "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace detail

struct AggregateRow {
  u64 p, d;
  Verdict v;
};

/// CSV of one claim over a results file, sorted by (p, d); a short human
/// summary (extremal rows, counts, flags) goes to `human`.
inline std::vector<AggregateRow> aggregate(const std::string& results_path, const std::string& claim_id,
                                           std::ostream& csv, std::ostream* human = nullptr) {
  if (!find_claim(claim_id)) throw UsageError("unknown claim id '" + claim_id + "'");
  std::vector<AggregateRow> rows;
  for (auto& r : read_results(results_path))
    for (auto& v : r.verdicts)
      if (v.claim_id == claim_id) rows.push_back({r.p, r.d, std::move(v)});
  std::sort(rows.begin(), rows.end(),
            [](const AggregateRow& a, const AggregateRow& b) { return std::tie(a.p, a.d) < std::tie(b.p, b.d); });

  csv << "p,d,lhs,rhs,ratio,pass,margin\n";
  for (const auto& row : rows)
    csv << row.p << ',' << row.d << ',' << detail::csv_number(row.v.lhs) << ',' << detail::csv_number(row.v.rhs)
        << ',' << detail::csv_number(row.v.ratio) << ',' << to_string(row.v.pass) << ','
        << detail::csv_number(row.v.margin) << '\n';

  if (human) {
    auto& h = *human;
    h << claim_id << ": " << rows.size() << " rows\n";
    const AggregateRow* lo = nullptr;
    const AggregateRow* hi = nullptr;
    u64 counts[4] = {0, 0, 0, 0};
    u64 flagged = 0;
    for (const auto& row : rows) {
      ++counts[static_cast<int>(row.v.pass)];
      flagged += is_flagged(row.v);
      if (!std::isfinite(row.v.ratio)) continue;
      if (!lo || row.v.ratio < lo->v.ratio) lo = &row;
      if (!hi || row.v.ratio > hi->v.ratio) hi = &row;
    }
    h << "  holds=" << counts[0] << " fails=" << counts[1] << " report-only=" << counts[2]
      << " indeterminate=" << counts[3] << " flagged=" << flagged << "\n";
    if (lo) h << "  >> min ratio " << lo->v.ratio << " at (p,d)=(" << lo->p << "," << lo->d << ")\n";
    if (hi) h << "  >> max ratio " << hi->v.ratio << " at (p,d)=(" << hi->p << "," << hi->d << ")\n";
    for (const auto& row : rows)
      if (row.v.failed()) h << "  !! fails at (p,d)=(" << row.p << "," << row.d << ")\n";
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Oracle cross-check for a single cell
// ---------------------------------------------------------------------------

/// Brute-force checks of the fast paths on R (small p only).
inline std::vector<Verdict> oracle_cross_check(const SubgroupDescriptor& r, const ExperimentRecord& rec) {
  std::vector<Verdict> out;
  const DenseSet& set = r.elements();
  out.push_back(exact_equal("oracle-energy", to_big(oracle::naive_energy(set, set)), to_big(rec.e2)));
  const bool same = oracle::naive_sumset(set, set, Sign::plus) == sumset(set, set, Sign::plus) &&
                    oracle::naive_sumset(set, set, Sign::minus) == sumset(set, set, Sign::minus);
  out.push_back(exact_equal("oracle-sumset", BigInt(same ? 1 : 0), BigInt(1)));
  const auto prof = fourier_profile(set, true);
  double worst = 0.0;
  for (u64 xi = 0; xi < r.p(); ++xi)
    worst = std::max(worst, std::abs(static_cast<double>(oracle::naive_dft(set, xi)) - prof.magnitudes[xi]));
  const double tol = std::max(prof.err, 1e-6 * static_cast<double>(set.size()));
  Verdict v{"oracle-dft", worst, tol};
  v.ratio = safe_ratio(worst, tol);
  v.pass = worst <= tol ? Outcome::holds : Outcome::fails;
  v.margin = tol - worst;
  out.push_back(v);
  return out;
}

}  // namespace subsum
