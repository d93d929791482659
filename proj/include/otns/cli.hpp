#pragma once

// Command-line front end: bound curves, rate sweeps, secure-region
// boundaries, protocol simulation, and attack experiments, as CSV or JSON.
//
// Every CSV starts with a '#' header carrying the exact command line plus the
// resolved seed and version, so re-running the recorded command reproduces
// the file byte-identically.  Exit codes: 0 success, 2 validation error,
// 3 abort-dominated simulation.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "otns/adversary.hpp"
#include "otns/coding.hpp"
#include "otns/csv.hpp"
#include "otns/entropy.hpp"
#include "otns/protocol.hpp"
#include "otns/rates.hpp"
#include "otns/version.hpp"

namespace otns::cli {

namespace detail {

inline std::string join_command(int argc, const char* const* argv) {
  std::string cmd = "otns";
  for (int i = 1; i < argc; ++i) {
    cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

inline std::string header_line(const std::string& command, std::uint64_t seed) {
  return command + " | seed=" + std::to_string(seed) + " version=" + kVersion;
}

// Writes either to --out or to the session stream.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
      use_file_ = true;
    }
  }
  std::ostream& stream() { return use_file_ ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
  bool use_file_ = false;
};

inline std::vector<double> parse_grid(double lo, double hi, double step, const char* what) {
  if (!(step > 0.0)) throw CLI::ValidationError(std::string(what), "step must be positive");
  if (!(lo <= hi)) throw CLI::ValidationError(std::string(what), "min must be <= max");
  std::vector<double> out;
  std::int64_t count = std::int64_t(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::int64_t i = 0; i < count; ++i) {
    double v = lo + double(i) * step;
    if (v > hi) v = hi;
    out.push_back(v);
  }
  return out;
}

// Shared channel/protocol flags of simulate and attack.
struct CommonFlags {
  std::int64_t n_prime = 10000;
  NoiseModel noise;
  SecurityParams security;
  std::string code_name = "hamming74";
  bool oracle_ec = false;
  std::string ell = "auto";
  std::string bound_name = "rational";
  std::uint64_t seed = 0;
  std::optional<double> r1, r2, r_dis;
  bool raw_pre = false, raw_mea = false, raw_mem = false;

  void add_to(CLI::App& app) {
    app.add_option("--n-prime", n_prime, "prepared qubits per session");
    app.add_option("--eta", noise.eta, "channel transmittance (0, 1]");
    app.add_option("--r-pre", noise.r_pre, "preparation depolarising parameter");
    app.add_option("--r-mea", noise.r_mea, "measurement depolarising parameter");
    app.add_option("--r-mem", noise.r_mem, "cheater memory depolarising parameter");
    app.add_option("--nu", noise.nu, "cheater storage rate");
    app.add_option("--m", noise.m, "burst length of the correlated memory");
    app.add_option("--r1", r1, "composite trusted noise r_pre*r_mea (sets r_pre, r_mea=1)");
    app.add_option("--r2", r2, "composite trusted noise r_pre (scenario 2)");
    app.add_option("--r-dis", r_dis, "composite storage noise r_pre*r_mem (sets r_mem)");
    app.add_option("--eps-s", security.eps_s, "smoothing epsilon");
    app.add_option("--eps-h", security.eps_h, "hashing epsilon");
    app.add_option("--eps-prime", security.eps_prime, "strong-converse smoothing epsilon");
    app.add_option("--eps-test", security.eps_test, "loss-test failure probability");
    app.add_option("--eps-ec", security.eps_ec, "target error-correction failure probability");
    app.add_option("--code", code_name,
                   "linear code: hamming74, repetition31, extended_hamming84");
    app.add_flag("--oracle-ec", oracle_ec,
                 "oracle error correction (asymptotic leakage accounting)");
    app.add_option("--ell", ell, "output length: 'auto' or a fixed nonnegative integer");
    app.add_option("--bound", bound_name, "min-entropy bound backing the ell budget");
    app.add_option("--seed", seed, "master seed (default from OTNS_SEED, else 0)")
        ->envname("OTNS_SEED");
  }

  // Composites win over raw parameters, with a warning on conflict.
  void resolve(const CLI::App& app, std::ostream& err) {
    bool have_pre = app.count("--r-pre") > 0;
    bool have_mea = app.count("--r-mea") > 0;
    bool have_mem = app.count("--r-mem") > 0;
    if (r1) {
      if (have_pre || have_mea)
        err << "warning: --r1 overrides --r-pre/--r-mea\n";
      noise.r_pre = *r1;
      noise.r_mea = 1.0;
    }
    if (r2) {
      if (have_pre || r1) err << "warning: --r2 overrides the preparation parameter\n";
      noise.r_pre = *r2;
    }
    if (r_dis) {
      if (have_mem) err << "warning: --r-dis overrides --r-mem\n";
      if (noise.r_pre <= 0.0) {
        if (*r_dis > 0.0)
          throw CLI::ValidationError("--r-dis", "unreachable with r_pre = 0");
        noise.r_mem = 0.0;
      } else {
        noise.r_mem = *r_dis / noise.r_pre;
        if (noise.r_mem > 1.0 + 1e-12)
          throw CLI::ValidationError("--r-dis", "exceeds r_pre; r_mem would leave [0, 1]");
        noise.r_mem = std::min(noise.r_mem, 1.0);
      }
    }
  }

  ProtocolConfig to_config() const {
    ProtocolConfig cfg;
    cfg.n_prime = n_prime;
    cfg.noise = noise;
    cfg.security = security;
    cfg.ec.backend = oracle_ec ? EcBackend::Oracle : EcBackend::Code;
    cfg.ec.code = LinearCode::by_name(code_name);
    cfg.ell_bound = bound_kind_from_string(bound_name);
    if (ell == "auto") {
      cfg.ell_policy.automatic = true;
    } else {
      cfg.ell_policy.automatic = false;
      try {
        std::size_t used = 0;
        cfg.ell_policy.fixed = std::stoll(ell, &used);
        if (used != ell.size()) throw std::invalid_argument(ell);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--ell", "must be 'auto' or a nonnegative integer");
      }
    }
    cfg.master_seed = seed;
    return cfg;
  }
};

inline std::vector<BoundKind> parse_kinds(const std::vector<std::string>& names) {
  std::vector<BoundKind> out;
  for (const auto& n : names) out.push_back(bound_kind_from_string(n));
  return out;
}

// ---- bounds ----

struct BoundsArgs {
  std::vector<std::string> kinds{"bounded_storage", "strong_converse", "collision"};
  double rmin = 0.0, rmax = 1.0, step = 0.01;
  double nu = 1.0;
  std::vector<int> ms{1};
  std::uint64_t seed = 0;
  std::string out_path;
};

inline int cmd_bounds(const BoundsArgs& a, const std::string& command, std::ostream& out_stream) {
  auto kinds = parse_kinds(a.kinds);
  if (!(a.rmin >= 0.0 && a.rmax <= 1.0))
    throw CLI::ValidationError("bounds", "grid outside [0, 1]");
  auto grid = parse_grid(a.rmin, a.rmax, a.step, "bounds");
  OutputTarget target(a.out_path, out_stream);
  CsvWriter csv(target.stream());
  csv.comment(header_line(command, a.seed));
  std::vector<std::string> header{"x"};
  for (BoundKind k : kinds) {
    bool correlated = k == BoundKind::CorrelatedCollision || k == BoundKind::CorrelatedBest;
    if (correlated && a.ms.size() > 1) {
      for (int m : a.ms)
        header.push_back("bound_" + std::string(to_string(k)) + "_m" + std::to_string(m));
    } else {
      header.push_back("bound_" + std::string(to_string(k)));
    }
  }
  csv.row(header);
  for (double r : grid) {
    std::vector<std::string> row{format_sig9(r)};
    for (BoundKind k : kinds) {
      bool correlated = k == BoundKind::CorrelatedCollision || k == BoundKind::CorrelatedBest;
      if (correlated && a.ms.size() > 1) {
        for (int m : a.ms)
          row.push_back(format_sig9(minentropy_rate(k, r, a.nu, m).bits_per_photon));
      } else {
        row.push_back(format_sig9(minentropy_rate(k, r, a.nu, a.ms.front()).bits_per_photon));
      }
    }
    csv.row(row);
  }
  return 0;
}

// ---- rates ----

struct RatesArgs {
  int scenario = 1;
  std::vector<std::string> bounds{"rational"};
  double trusted = 1.0;
  double nu = 1.0;
  double min = 0.0, max = 1.0, step = 0.01;
  std::uint64_t seed = 0;
  std::string out_path;
};

inline int cmd_rates(const RatesArgs& a, const std::string& command, std::ostream& out_stream) {
  if (a.scenario != 1 && a.scenario != 2)
    throw CLI::ValidationError("rates", "scenario must be 1 or 2");
  auto kinds = parse_kinds(a.bounds);
  auto grid = parse_grid(a.min, a.max, a.step, "rates");
  OutputTarget target(a.out_path, out_stream);
  CsvWriter csv(target.stream());
  csv.comment(header_line(command, a.seed));
  csv.comment("scenario=" + std::to_string(a.scenario) + " trusted=" + format_sig9(a.trusted) +
              " nu=" + format_sig9(a.nu) + " ec_rate=" + format_sig9(ec_leak_rate(a.trusted)));
  std::vector<std::string> header{"x"};
  for (BoundKind k : kinds) header.push_back("rate_" + std::string(to_string(k)));
  csv.row(header);
  for (double mem : grid) {
    std::vector<std::string> row{format_sig9(mem)};
    for (BoundKind k : kinds) {
      RateResult r = a.scenario == 1 ? rate_scenario1(mem, a.trusted, k, a.nu)
                                     : rate_scenario2(mem, a.trusted, k, a.nu);
      row.push_back(format_sig9(r.bit_rate));
    }
    csv.row(row);
  }
  return 0;
}

// ---- boundary ----

struct BoundaryArgs {
  int scenario = 1;
  std::vector<std::string> bounds{"rational", "strong_converse", "collision"};
  double nu = 1.0;
  int grid = 101;
  bool storage_sweep = false;
  std::uint64_t seed = 0;
  std::string out_path;
};

inline int cmd_boundary(const BoundaryArgs& a, const std::string& command,
                        std::ostream& out_stream) {
  OutputTarget target(a.out_path, out_stream);
  CsvWriter csv(target.stream());
  csv.comment(header_line(command, a.seed));
  if (a.storage_sweep) {
    // Bounded-storage region (r_mem = 1, Rational bound): x is the storage
    // rate nu, the boundary column the minimal trusted r2 for security.
    auto pts = secure_boundary_storage(a.grid);
    csv.row({"x", "boundary_r2"});
    for (const auto& p : pts)
      csv.row({format_sig9(p.x), p.boundary ? format_sig9(*p.boundary) : std::string()});
    return 0;
  }
  auto kinds = parse_kinds(a.bounds);
  std::vector<std::vector<BoundaryPoint>> curves;
  for (BoundKind k : kinds) curves.push_back(secure_boundary(a.scenario, k, a.nu, a.grid));
  std::vector<std::string> header{"x"};
  for (BoundKind k : kinds) header.push_back("boundary_" + std::string(to_string(k)));
  csv.row(header);
  for (int i = 0; i < a.grid; ++i) {
    std::vector<std::string> row{format_sig9(curves.front()[std::size_t(i)].x)};
    for (const auto& c : curves) {
      const auto& b = c[std::size_t(i)].boundary;
      row.push_back(b ? format_sig9(*b) : std::string());
    }
    csv.row(row);
  }
  return 0;
}

// ---- threshold ----

inline int cmd_threshold(std::uint64_t seed, const std::string& command,
                         const std::string& out_path, std::ostream& out_stream) {
  OutputTarget target(out_path, out_stream);
  CsvWriter csv(target.stream());
  csv.comment(header_line(command, seed));
  double r_star = threshold_trusted_noise();
  csv.row({"r_star", "noise_fraction", "ec_leak_rate"});
  csv.row({format_sig9(r_star), format_sig9(1.0 - r_star), format_sig9(ec_leak_rate(r_star))});
  return 0;
}

// ---- simulate ----

struct SimulateArgs {
  CommonFlags common;
  std::int64_t sessions = 1;
  std::optional<double> eta_actual;
  std::string out_path;
  std::string transcripts_path;
};

inline int cmd_simulate(const SimulateArgs& a, const std::string& command,
                        std::ostream& out_stream, std::ostream& err) {
  ProtocolConfig cfg = a.common.to_config();
  cfg.eta_actual = a.eta_actual;
  if (a.sessions < 1) throw CLI::ValidationError("simulate", "sessions must be >= 1");
  auto errors = cfg.validate();
  if (!errors.empty()) {
    for (const auto& e : errors) err << "error: " << e << "\n";
    return 2;
  }

  std::int64_t aborted = 0, ec_failures = 0, hash_mismatches = 0;
  double sum_detected = 0.0, sum_ell = 0.0, sum_analytic = 0.0;
  ChannelStats channel;
  nlohmann::json transcripts = nlohmann::json::array();
  const double p_flip = (1.0 - cfg.noise.r1()) / 2.0;
  for (std::int64_t s = 0; s < a.sessions; ++s) {
    Transcript tr = run_honest_session(cfg, s);
    if (!a.transcripts_path.empty()) transcripts.push_back(transcript_to_json(tr, cfg, command));
    sum_detected += double(tr.detected_indices.size());
    if (tr.abort_reason) {
      ++aborted;
      continue;
    }
    channel.accumulate(tr);
    sum_ell += double(tr.ell);
    if (tr.ec_failed) ++ec_failures;
    const Bits& s_b = tr.b ? tr.s1 : tr.s0;
    if (tr.s_tilde_b != s_b) ++hash_mismatches;
    std::int64_t n_b_bits = std::int64_t(tr.b ? tr.i1.size() : tr.i0.size());
    sum_analytic += analytic_ec_session_failure(cfg.ec.code, n_b_bits, p_flip);
  }
  std::int64_t nonaborted = a.sessions - aborted;

  if (!a.transcripts_path.empty()) {
    std::ofstream tf(a.transcripts_path, std::ios::binary);
    if (!tf) throw std::runtime_error("cannot open transcript file: " + a.transcripts_path);
    tf << transcripts.dump(2) << "\n";
  }

  OutputTarget target(a.out_path, out_stream);
  CsvWriter csv(target.stream());
  csv.comment(header_line(command, a.common.seed));
  csv.comment("loss_test=hoeffding-4cell sampling=asymptotic");
  csv.row({"sessions", "aborted", "abort_rate", "ec_failures", "ec_failure_rate",
           "hash_mismatches", "hash_mismatch_rate", "analytic_ec_failure", "mean_detected",
           "mean_ell", "matched_error_rate", "matched_error_expected", "mismatched_agree_rate"});
  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
  csv.row({format_int(a.sessions), format_int(aborted),
           format_sig9(ratio(double(aborted), double(a.sessions))), format_int(ec_failures),
           format_sig9(ratio(double(ec_failures), double(nonaborted))),
           format_int(hash_mismatches),
           format_sig9(ratio(double(hash_mismatches), double(nonaborted))),
           format_sig9(ratio(sum_analytic, double(nonaborted))),
           format_sig9(sum_detected / double(a.sessions)),
           format_sig9(ratio(sum_ell, double(nonaborted))),
           format_sig9(ratio(double(channel.matched_errors), double(channel.matched))),
           format_sig9(p_flip),
           format_sig9(ratio(double(channel.mismatched_agree), double(channel.mismatched)))});
  if (2 * aborted > a.sessions) return 3;  // abort-dominated
  return 0;
}

// ---- attack ----

struct AttackArgs {
  CommonFlags common;
  std::string strategy = "store_all_depolarizing";
  double memory_r = 1.0;
  std::optional<double> rmin, rmax;
  double step = 0.1;
  double fraction_nu = 1.0;
  std::int64_t trials = 1000;
  std::int64_t target_bits = 0;
  std::string out_path;
  std::string json_path;
};

inline int cmd_attack(const AttackArgs& a, const std::string& command, std::ostream& out_stream,
                      std::ostream& err) {
  ProtocolConfig cfg = a.common.to_config();
  AttackKind kind = attack_kind_from_string(a.strategy);
  auto errors = cfg.validate();
  if (!errors.empty()) {
    for (const auto& e : errors) err << "error: " << e << "\n";
    return 2;
  }
  std::vector<double> grid;
  if (a.rmin || a.rmax) {
    grid = parse_grid(a.rmin.value_or(0.0), a.rmax.value_or(1.0), a.step, "attack");
  } else {
    grid.push_back(a.memory_r);
  }

  OutputTarget target(a.out_path, out_stream);
  CsvWriter csv(target.stream());
  csv.comment(header_line(command, a.common.seed));
  csv.comment("strategy=" + a.strategy + " trials=" + format_int(a.trials) +
              " target_bits=" + format_int(a.target_bits));
  csv.row({"x", "per_bit_empirical", "per_bit_analytic", "full_string_empirical",
           "full_string_analytic", "exponent_empirical", "exponent_ci_lo", "exponent_ci_hi",
           "exponent_analytic", "exponent_bound"});
  nlohmann::json dump = nlohmann::json::array();
  for (double r : grid) {
    AttackStrategy st{kind, r, a.fraction_nu};
    AttackStats stats = run_attack(cfg, st, a.trials, a.target_bits);
    double p_bit = analytic_per_bit_success(st, cfg.noise);
    std::vector<std::string> row{format_sig9(r), format_sig9(stats.per_bit_frequency()),
                                 format_sig9(p_bit)};
    bool have_full = a.target_bits > 0 && stats.full_string_trials > 0;
    if (have_full) {
      row.push_back(format_sig9(stats.full_string_frequency()));
      row.push_back(format_sig9(std::pow(p_bit, double(a.target_bits))));
      GuessingExponent ge = empirical_guessing_exponent(stats, a.target_bits);
      row.push_back(ge.degenerate ? std::string() : format_sig9(ge.exponent));
      row.push_back(format_sig9(ge.ci_lo));
      row.push_back(std::isfinite(ge.ci_hi) ? format_sig9(ge.ci_hi) : std::string());
      row.push_back(format_sig9(-std::log2(p_bit)));
    } else {
      for (int i = 0; i < 5; ++i) row.push_back(std::string());
      row.push_back(format_sig9(-std::log2(p_bit)));
    }
    // The smooth erasure bound 1 - r pairs with the erasure strategy's raw
    // exponent log2(2/(1+r)); other memory models have no tight analogue.
    row.push_back(kind == AttackKind::ErasureFlagMemory
                      ? format_sig9(minentropy_rate_erasure(r).bits_per_photon)
                      : std::string());
    csv.row(row);
    if (!a.json_path.empty()) {
      nlohmann::json rec{{"x", r},
                         {"strategy", a.strategy},
                         {"analytic_per_bit", p_bit},
                         {"stats", attack_stats_json(stats)}};
      dump.push_back(rec);
    }
  }
  if (!a.json_path.empty()) {
    std::ofstream jf(a.json_path, std::ios::binary);
    if (!jf) throw std::runtime_error("cannot open json file: " + a.json_path);
    jf << dump.dump(2) << "\n";
  }
  return 0;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  const std::string command = join_command(argc, argv);

  CLI::App app{"Security bounds and protocol simulation for oblivious transfer "
               "against noisy quantum storage"};
  app.require_subcommand(1);

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "min-entropy bound curves vs r (CSV)");
  bounds->add_option("--kinds", bounds_args.kinds, "bound kinds")->delimiter(',');
  bounds->add_option("--rmin", bounds_args.rmin, "grid start");
  bounds->add_option("--rmax", bounds_args.rmax, "grid end");
  bounds->add_option("--step", bounds_args.step, "grid step");
  bounds->add_option("--nu", bounds_args.nu, "storage rate for the nu-aware kinds");
  bounds->add_option("--m", bounds_args.ms, "burst lengths for the correlated kinds")
      ->delimiter(',');
  bounds->add_option("--seed", bounds_args.seed, "recorded seed")->envname("OTNS_SEED");
  bounds->add_option("--out", bounds_args.out_path, "output file (default stdout)");

  RatesArgs rates_args;
  auto* rates = app.add_subcommand("rates", "OT bit rate vs the memory parameter (CSV)");
  rates->add_option("--scenario", rates_args.scenario, "1 or 2");
  rates->add_option("--bounds", rates_args.bounds, "bound kinds")->delimiter(',');
  rates->add_option("--trusted", rates_args.trusted, "trusted-noise parameter (r1 or r2)");
  rates->add_option("--nu", rates_args.nu, "storage rate");
  rates->add_option("--min", rates_args.min, "memory grid start");
  rates->add_option("--max", rates_args.max, "memory grid end");
  rates->add_option("--step", rates_args.step, "memory grid step");
  rates->add_option("--seed", rates_args.seed, "recorded seed")->envname("OTNS_SEED");
  rates->add_option("--out", rates_args.out_path, "output file (default stdout)");

  BoundaryArgs boundary_args;
  auto* boundary = app.add_subcommand("boundary", "secure-region boundary curves (CSV)");
  boundary->add_option("--scenario", boundary_args.scenario, "1 or 2");
  boundary->add_option("--bounds", boundary_args.bounds, "bound kinds")->delimiter(',');
  boundary->add_option("--nu", boundary_args.nu, "storage rate");
  boundary->add_option("--grid", boundary_args.grid, "grid points");
  boundary->add_flag("--storage-sweep", boundary_args.storage_sweep,
                     "sweep the storage rate nu against trusted r2 (r_mem = 1)");
  boundary->add_option("--seed", boundary_args.seed, "recorded seed")->envname("OTNS_SEED");
  boundary->add_option("--out", boundary_args.out_path, "output file (default stdout)");

  std::uint64_t threshold_seed = 0;
  std::string threshold_out;
  auto* threshold = app.add_subcommand("threshold", "maximum tolerable trusted noise");
  threshold->add_option("--seed", threshold_seed, "recorded seed")->envname("OTNS_SEED");
  threshold->add_option("--out", threshold_out, "output file (default stdout)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "honest protocol sessions (CSV summary)");
  sim_args.common.add_to(*simulate);
  simulate->add_option("--sessions", sim_args.sessions, "number of sessions");
  simulate->add_option("--eta-actual", sim_args.eta_actual,
                       "actual channel transmittance when it differs from --eta");
  simulate->add_option("--out", sim_args.out_path, "summary file (default stdout)");
  simulate->add_option("--transcripts", sim_args.transcripts_path,
                       "write all session transcripts to this JSON file");

  AttackArgs attack_args;
  auto* attack = app.add_subcommand("attack", "cheating-receiver experiments (CSV sweep)");
  attack_args.common.add_to(*attack);
  attack->add_option("--strategy", attack_args.strategy,
                     "measure_immediately, store_all_depolarizing, store_fraction, "
                     "erasure_flag_memory");
  attack->add_option("--memory-r", attack_args.memory_r, "memory parameter (single point)");
  attack->add_option("--sweep-min", attack_args.rmin, "memory parameter sweep start");
  attack->add_option("--sweep-max", attack_args.rmax, "memory parameter sweep end");
  attack->add_option("--sweep-step", attack_args.step, "memory parameter sweep step");
  attack->add_option("--fraction-nu", attack_args.fraction_nu,
                     "stored fraction for store_fraction");
  attack->add_option("--trials", attack_args.trials, "number of trials");
  attack->add_option("--target-bits", attack_args.target_bits,
                     "full-string target length k (0 = whole substring)");
  attack->add_option("--out", attack_args.out_path, "output file (default stdout)");
  attack->add_option("--json", attack_args.json_path, "write raw stats to this JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*bounds) return cmd_bounds(bounds_args, command, out);
    if (*rates) return cmd_rates(rates_args, command, out);
    if (*boundary) return cmd_boundary(boundary_args, command, out);
    if (*threshold) return cmd_threshold(threshold_seed, command, threshold_out, out);
    if (*simulate) {
      sim_args.common.resolve(*simulate, err);
      return cmd_simulate(sim_args, command, out, err);
    }
    if (*attack) {
      attack_args.common.resolve(*attack, err);
      return cmd_attack(attack_args, command, out, err);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("otns");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(int(argv.size()), argv.data(), out, err);
}

}  // namespace otns::cli
