// subsum: sweep primes and subgroup orders, run the general-set corpus,
// aggregate results, print a single record.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "subsum/subsum.hpp"

namespace {

std::vector<std::string> split_claims(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace subsum;
  CLI::App app{"Subgroup sumset experiments over prime fields"};
  app.require_subcommand(1);

  SweepConfig sweep_cfg;
  std::string sweep_claims;
  u64 dmin = 0, dmax = 0;
  std::optional<u64> limit;
  auto* sweep = app.add_subcommand("sweep", "Compute one JSONL record per admitted (p, d) cell");
  sweep->add_option("--pmin", sweep_cfg.p_min, "Smallest prime")->required();
  sweep->add_option("--pmax", sweep_cfg.p_max, "Largest prime")->required();
  sweep->add_option("--dfilter", sweep_cfg.d_filter, "Subgroup order filter, e.g. 'all' or 'd>=p^0.494'")
      ->capture_default_str();
  auto* dmin_opt = sweep->add_option("--dmin", dmin, "Smallest subgroup order");
  auto* dmax_opt = sweep->add_option("--dmax", dmax, "Largest subgroup order");
  sweep->add_option("--claims", sweep_claims, "Comma-separated claim IDs (default: all subgroup claims)");
  sweep->add_option("--lmax", sweep_cfg.lmax, "Basis-order cap")->capture_default_str();
  sweep->add_option("--samples", sweep_cfg.samples, "Random coset unions per cell for thm-2.2")
      ->capture_default_str();
  sweep->add_option("--jobs", sweep_cfg.jobs, "Worker threads")->capture_default_str();
  sweep->add_option("--out", sweep_cfg.out_path, "Results file (JSONL)")->capture_default_str();
  sweep->add_flag("--resume", sweep_cfg.resume, "Skip (p, d) keys already in the results file");
  sweep->add_option("--seed", sweep_cfg.seed, "Sampling seed")->capture_default_str();
  sweep->add_flag("--timing", sweep_cfg.timing, "Record wall_time_ms (output is no longer byte-stable)");
  sweep->add_option("--limit", limit, "Stop after this many new records")->group("");

  u64 seed = 1, trials = 10, pcap = 101;
  auto* corpus = app.add_subcommand("verify-corpus", "Randomized exact checks on arbitrary sets");
  corpus->add_option("--seed", seed, "Corpus seed")->capture_default_str();
  corpus->add_option("--trials", trials, "Number of random sets")->capture_default_str();
  corpus->add_option("--pcap", pcap, "Largest prime")->capture_default_str();

  std::string results_path, claim_id;
  auto* agg = app.add_subcommand("aggregate", "CSV of one claim over a results file");
  agg->add_option("--out", results_path, "Results file (JSONL)")->required();
  agg->add_option("--claim", claim_id, "Claim ID")->required();

  u64 sp = 0, sd = 0;
  bool use_oracle = false;
  ReportOptions stats_opts;
  std::string stats_claims;
  auto* stats = app.add_subcommand("stats", "Print the record for one (p, d)");
  stats->add_option("--p", sp, "Prime")->required();
  stats->add_option("--d", sd, "Subgroup order, a divisor of p - 1")->required();
  stats->add_option("--lmax", stats_opts.lmax, "Basis-order cap")->capture_default_str();
  stats->add_option("--samples", stats_opts.samples, "Random coset unions for thm-2.2")->capture_default_str();
  stats->add_option("--seed", stats_opts.seed, "Sampling seed")->capture_default_str();
  stats->add_option("--claims", stats_claims, "Comma-separated claim IDs");
  stats->add_flag("--oracle", use_oracle, "Cross-check against the brute-force oracles (small p)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) {
      sweep_cfg.claims = split_claims(sweep_claims);
      if (*dmin_opt) sweep_cfg.d_min = dmin;
      if (*dmax_opt) sweep_cfg.d_max = dmax;
      sweep_cfg.limit = limit;
      const auto summary = run_sweep(sweep_cfg, &std::cout);
      return summary.exit_code();
    }
    if (*corpus) {
      const auto s = verify_corpus(seed, trials, pcap, std::cout);
      return s.exit_code();
    }
    if (*agg) {
      const auto rows = aggregate(results_path, claim_id, std::cout, &std::cerr);
      for (const auto& r : rows)
        if (r.v.failed()) return kExitClaimFailed;
      return kExitOk;
    }
    if (*stats) {
      if (!is_prime(sp)) throw UsageError("--p must be prime");
      if (sd == 0 || (sp - 1) % sd != 0) throw UsageError("--d must divide p - 1");
      stats_opts.claims = split_claims(stats_claims);
      for (const auto& id : stats_opts.claims)
        if (!find_claim(id)) throw UsageError("unknown claim id '" + id + "'");
      const SubgroupDescriptor r(FieldContext::make(sp), sd);
      auto rec = subgroup_report(r, stats_opts);
      if (use_oracle) {
        try {
          for (auto& v : oracle_cross_check(r, rec)) rec.verdicts.push_back(std::move(v));
        } catch (const CapacityError& e) {
          std::cerr << "oracle: " << e.what() << "\n";
          return kExitUsage;
        }
      }
      std::cout << to_json(rec).dump() << "\n";
      for (const auto& v : rec.verdicts)
        if (v.failed()) return kExitClaimFailed;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CorruptionError& e) {
    std::cerr << "corrupt results file: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
