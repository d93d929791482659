// Acceptance gate: one verdict line per criterion, exit code = number of
// failures.  Checks stay on in every build type.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "otns/adversary.hpp"
#include "otns/cli.hpp"

using namespace otns;

namespace {

int g_failures = 0;
bool g_ok = true;
std::string g_note;

#define CHECK(cond)                        \
  do {                                     \
    if (!(cond)) {                         \
      if (g_ok) g_note = #cond;            \
      g_ok = false;                        \
    }                                      \
  } while (0)

void run_criterion(const char* name, void (*fn)()) {
  g_ok = true;
  g_note.clear();
  auto t0 = std::chrono::steady_clock::now();
  try {
    fn();
  } catch (const std::exception& e) {
    g_ok = false;
    g_note = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", dt);
  std::cout << (g_ok ? "[PASS] " : "[FAIL] ") << name << " (" << timing << ")";
  if (!g_ok && !g_note.empty()) std::cout << "  -- " << g_note;
  std::cout << "\n";
  if (!g_ok) ++g_failures;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- minimal CSV access for in-process CLI runs ----

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) continue;
    if (!have_header) {
      csv.header = split(line, ',');
      have_header = true;
    } else {
      csv.rows.push_back(split(line, ','));
    }
  }
  return csv;
}

// ---- criteria ----

void threshold_criterion() {
  auto t0 = std::chrono::steady_clock::now();
  CliRun r = run_cli({"threshold"});
  double dt = elapsed_since(t0);
  CHECK(r.code == 0);
  Csv csv = parse_csv(r.out);
  CHECK(csv.rows.size() == 1);
  double r_star = std::stod(csv.rows.at(0).at(0));
  CHECK(std::abs(r_star - 0.78) <= 0.001);
  CHECK(std::abs((1.0 - r_star) - 0.22) <= 0.001);
  CHECK(std::abs(std::stod(csv.rows.at(0).at(2)) - 0.5) <= 1e-6);
  CHECK(dt < 1.0);
}

void bound_curves_criterion() {
  auto t0 = std::chrono::steady_clock::now();
  CliRun r = run_cli({"bounds", "--rmin", "0", "--rmax", "1", "--step", "0.01"});
  CHECK(r.code == 0);
  Csv csv = parse_csv(r.out);
  CHECK(csv.rows.size() == 101);
  CHECK((csv.header ==
         std::vector<std::string>{"x", "bound_bounded_storage", "bound_strong_converse",
                                  "bound_collision"}));
  for (const auto& row : csv.rows) {
    double x = std::stod(row.at(0));
    // printed at nine significant digits; the exact check follows below
    CHECK(std::abs(std::stod(row.at(1)) - std::max(0.0, 0.5 - x)) <= 5e-9);
  }
  for (int i = 0; i <= 100; ++i) {
    double x = double(i) * 0.01;
    CHECK(minentropy_rate_bounded(x, 1.0).bits_per_photon == std::max(0.0, 0.5 - x));
    if (x >= 0.79) CHECK(minentropy_rate_strong_converse(x).bits_per_photon == 0.0);
  }
  CHECK(std::abs(minentropy_rate_collision(0.0).bits_per_photon - 1.0) <= 1e-9);
  CHECK(std::abs(minentropy_rate_collision(1.0).bits_per_photon - 0.0) <= 1e-9);
  CHECK(std::abs(minentropy_rate_strong_converse(0.0).bits_per_photon - 0.5) <= 1e-6);
  CHECK(elapsed_since(t0) < 5.0);
}

void crossover_criterion() {
  // independent root of log2(1 + 3 r^2) = r
  auto f = [](double r) { return std::log2(1.0 + 3.0 * r * r) - r; };
  double lo = 0.1, hi = 0.5;
  CHECK(f(lo) < 0.0);
  CHECK(f(hi) > 0.0);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double root = 0.5 * (lo + hi);
  CHECK(root >= 0.24 && root <= 0.26);

  // the collision and erasure curves change order exactly once on (0, 1)
  int sign_changes = 0;
  bool prev_neg = false;
  for (int i = 1; i <= 999; ++i) {
    double r = double(i) / 1000.0;
    double d = minentropy_rate_collision(r).bits_per_photon -
               minentropy_rate_erasure(r).bits_per_photon;
    bool neg = d < 0.0;
    if (i > 1 && neg != prev_neg) ++sign_changes;
    prev_neg = neg;
  }
  CHECK(sign_changes == 1);
  CHECK(std::abs(minentropy_rate_collision(root).bits_per_photon -
                 minentropy_rate_erasure(root).bits_per_photon) <= 1e-9);
}

void secure_region_criterion() {
  const double r_star = threshold_trusted_noise();
  const int grid = 101;
  auto rational = secure_boundary(1, BoundKind::Rational, 1.0, grid);
  auto sc = secure_boundary(1, BoundKind::StrongConverse, 1.0, grid);
  auto coll = secure_boundary(1, BoundKind::Collision, 1.0, grid);
  CHECK(rational.size() == std::size_t(grid));
  for (int i = 0; i < grid; ++i) {
    if (rational[std::size_t(i)].x < r_star) CHECK(!rational[std::size_t(i)].boundary);
    if (rational[std::size_t(i)].x >= 0.79) CHECK(rational[std::size_t(i)].boundary.has_value());
    // the rational-bound boundary dominates both comparisons pointwise
    if (sc[std::size_t(i)].boundary) {
      CHECK(rational[std::size_t(i)].boundary.has_value());
      CHECK(*rational[std::size_t(i)].boundary >= *sc[std::size_t(i)].boundary - 1e-8);
    }
    if (coll[std::size_t(i)].boundary) {
      CHECK(rational[std::size_t(i)].boundary.has_value());
      CHECK(*rational[std::size_t(i)].boundary >= *coll[std::size_t(i)].boundary - 1e-8);
    }
  }
  // nonempty at trusted noise 0.95: positive rate against fully decohering storage
  RateResult rr = rate_scenario1(0.0, 0.95);
  CHECK(rr.bit_rate > 0.0);
  CHECK(std::abs(rr.bit_rate - (0.5 - binary_entropy(0.975))) <= 1e-12);
  CHECK(std::abs(rr.bit_rate - 0.331339068503330) <= 1e-9);
  CHECK(std::abs(rational[95].x - 0.95) <= 1e-12);
  CHECK(rational[95].boundary.has_value());
}

void storage_boundary_criterion() {
  const double r_star = threshold_trusted_noise();
  auto pts = secure_boundary_storage(101);
  CHECK(pts.size() == 101);
  CHECK(pts.front().boundary.has_value());
  CHECK(std::abs(*pts.front().boundary - r_star) <= 1e-6);
  CHECK(std::abs(pts[1].x - 0.01) <= 1e-12);
  CHECK(pts[1].boundary.has_value());
  CHECK(std::abs(*pts[1].boundary - r_star) <= 0.005);
  // minimal trusted quality rises with the storage rate, so the tolerable
  // noise fraction 1 - r2 falls monotonically
  double prev = 0.0;
  for (const auto& p : pts) {
    CHECK(p.boundary.has_value());
    CHECK(*p.boundary >= prev - 1e-9);
    prev = *p.boundary;
  }
  CHECK(std::abs(*pts.back().boundary - 1.0) <= 1e-6);
}

void correlated_ordering_criterion() {
  for (int i = 0; i <= 100; ++i) {
    double r = double(i) * 0.01;
    double v1 = minentropy_rate_correlated(r, 1).bits_per_photon;
    double v2 = minentropy_rate_correlated(r, 2).bits_per_photon;
    double v5 = minentropy_rate_correlated(r, 5).bits_per_photon;
    CHECK(v1 >= v2 - 1e-12);
    CHECK(v2 >= v5 - 1e-12);
    CHECK(std::abs(v1 - minentropy_rate_collision(r).bits_per_photon) <= 1e-12);
  }
}

// 10^3 sessions at n' = 10^4 shared by the honest-protocol and channel
// statistics criteria
struct HonestRun {
  std::int64_t sessions = 1000;
  std::int64_t aborted = 0, completed = 0, mismatches = 0;
  double sum_analytic = 0.0;
  double seconds = 0.0;
  ChannelStats channel;
};

const HonestRun& honest_run() {
  static const HonestRun run = [] {
    HonestRun h;
    ProtocolConfig cfg;
    cfg.n_prime = 10000;
    cfg.noise.eta = 0.5;
    cfg.noise.r_pre = 0.98;  // trusted r1 with ideal measurement
    cfg.noise.r_mea = 1.0;
    cfg.noise.r_mem = 0.2;
    cfg.security.eps_h = std::ldexp(1.0, -30);
    cfg.ec.backend = EcBackend::Oracle;
    cfg.master_seed = 6021023;
    const double p_flip = (1.0 - cfg.noise.r1()) / 2.0;
    auto t0 = std::chrono::steady_clock::now();
    for (std::int64_t s = 0; s < h.sessions; ++s) {
      Transcript tr = run_honest_session(cfg, s);
      if (tr.abort_reason) {
        ++h.aborted;
        continue;
      }
      ++h.completed;
      h.channel.accumulate(tr);
      const Bits& s_b = tr.b ? tr.s1 : tr.s0;
      if (tr.s_tilde_b != s_b) ++h.mismatches;
      std::int64_t n_b = std::int64_t(tr.b ? tr.i1.size() : tr.i0.size());
      h.sum_analytic += analytic_ec_session_failure(cfg.ec.code, n_b, p_flip);
    }
    h.seconds = elapsed_since(t0);
    return h;
  }();
  return run;
}

void honest_protocol_criterion() {
  const HonestRun& h = honest_run();
  CHECK(h.seconds < 60.0);
  CHECK(h.completed > 0);
  const double eps_test = 1e-3;
  double abort_rate = double(h.aborted) / double(h.sessions);
  CHECK(abort_rate <=
        eps_test + 4.0 * std::sqrt(eps_test * (1.0 - eps_test) / double(h.sessions)));
  double analytic = h.sum_analytic / double(h.completed);
  double mismatch_rate = double(h.mismatches) / double(h.completed);
  CHECK(mismatch_rate <=
        analytic + 4.0 * std::sqrt(analytic * (1.0 - analytic) / double(h.completed)));
}

void channel_statistics_criterion() {
  const ChannelStats& c = honest_run().channel;
  const double p = 0.01;  // (1 - 0.98) / 2
  CHECK(c.matched >= 100000);
  CHECK(c.mismatched >= 100000);
  double err = double(c.matched_errors) / double(c.matched);
  CHECK(std::abs(err - p) <= 3.0 * std::sqrt(p * (1.0 - p) / double(c.matched)));
  double agree = double(c.mismatched_agree) / double(c.mismatched);
  CHECK(std::abs(agree - 0.5) <= 3.0 * std::sqrt(0.25 / double(c.mismatched)));
}

void attack_oracle_criterion() {
  ProtocolConfig cfg;
  cfg.n_prime = 2000;
  cfg.noise.r_pre = 0.9;
  cfg.noise.r_mem = 0.0;
  cfg.security.eps_h = 1e-3;
  cfg.master_seed = 12;
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    AttackStrategy st{AttackKind::StoreAllDepolarizing, r, 1.0};
    AttackStats stats = run_attack(cfg, st, 120);
    CHECK(stats.per_bit_opportunities >= 100000);
    double p = analytic_per_bit_success(st, cfg.noise);
    CHECK(std::abs(p - (1.0 + 0.9 * r) / 2.0) <= 1e-12);
    double sd = std::sqrt(p * (1.0 - p) / double(stats.per_bit_opportunities));
    if (sd == 0.0)
      CHECK(stats.per_bit_frequency() == p);
    else
      CHECK(std::abs(stats.per_bit_frequency() - p) <= 3.0 * sd);
  }

  ProtocolConfig ecfg;
  ecfg.n_prime = 200;
  ecfg.noise.r_mem = 0.0;
  ecfg.security.eps_h = 1e-3;
  ecfg.master_seed = 17;
  AttackStrategy st{AttackKind::ErasureFlagMemory, 0.6, 1.0};
  const std::int64_t k = 16;
  AttackStats stats = run_attack(ecfg, st, 4000, k);
  CHECK(stats.full_string_trials == 4000);
  double p_full = std::pow((1.0 + 0.6) / 2.0, double(k));
  Interval ci = clopper_pearson(stats.full_string_successes, stats.full_string_trials);
  CHECK(ci.lo <= p_full);
  CHECK(p_full <= ci.hi);
}

void exponent_inequality_criterion() {
  int equalities = 0;
  for (int i = 0; i <= 1000; ++i) {
    double r = double(i) / 1000.0;
    double lhs = std::log2(2.0 / (1.0 + r));
    double rhs = 1.0 - r;
    CHECK(lhs <= rhs + 1e-12);
    if (std::abs(lhs - rhs) <= 1e-12) {
      ++equalities;
      CHECK(i == 0 || i == 1000);
    } else {
      CHECK(rhs - lhs > 1e-9);
    }
    CHECK(std::abs(minentropy_rate_erasure(r).bits_per_photon - rhs) <= 1e-15);
  }
  CHECK(equalities == 2);
}

void property_suites_criterion() {
  // conversion-function inversion round-trip
  for (int i = 1; i <= 499; ++i) {
    double y = double(i) / 1000.0;
    CHECK(std::abs(gamma_big(g_func(y)) - y) <= 1e-9);
  }
  for (int i = 500; i <= 1000; ++i) {
    double x = double(i) / 1000.0;
    CHECK(gamma_big(x) == x);
  }

  // deviation <-> failure probability round-trip
  for (std::int64_t n : {std::int64_t(1024), std::int64_t(8192)}) {
    for (double lambda : {0.05, 0.1, 0.2, 0.3, 0.4}) {
      double eps = lambda_to_epsilon(n, lambda);
      CHECK(eps > 0.0 && eps < 1.0);
      CHECK(std::abs(epsilon_to_lambda(n, eps) - lambda) <= 1e-9);
    }
  }

  // hash family 2-universality in Monte Carlo
  {
    RngStream rng(31337, 0);
    const std::size_t n = 16, ell = 8;
    Bits x = rng.random_bits(n), y;
    do {
      y = rng.random_bits(n);
    } while (y == x);
    const int trials = 120000;
    int collisions = 0;
    for (int t = 0; t < trials; ++t) {
      ToeplitzSeed s;
      s.output_len = ell;
      s.bits = rng.random_bits(toeplitz_seed_len(n, ell));
      if (toeplitz_hash(s, x) == toeplitz_hash(s, y)) ++collisions;
    }
    double p = std::pow(2.0, -double(ell));
    double sigma = std::sqrt(p * (1.0 - p) * trials);
    CHECK(double(collisions) <= trials * p + 5.0 * sigma);
  }

  // decode-failure frequency against the binomial oracle
  {
    RngStream rng(2024, 0);
    const double p = 0.08;
    for (const char* name : {"hamming74", "repetition31", "extended_hamming84"}) {
      const LinearCode& code = LinearCode::by_name(name);
      int n_b = code.block_len();
      const int blocks = 20000;
      int failures = 0;
      for (int blk = 0; blk < blocks; ++blk) {
        Bits x = rng.random_bits(std::size_t(n_b));
        Bits y(x);
        for (int i = 0; i < n_b; ++i)
          if (rng.bernoulli(p)) y[std::size_t(i)] ^= 1;
        DecodeResult d = decode(code, y, syndrome(code, x));
        if (d.any_failed || d.corrected != x) ++failures;
      }
      double ok_prob = 0.0;
      for (int w = 0; w <= code.correction_radius(); ++w)
        ok_prob += std::exp(log_choose(n_b, w)) * std::pow(p, w) * std::pow(1.0 - p, n_b - w);
      double expect = 1.0 - ok_prob;
      double sigma = std::sqrt(expect * (1.0 - expect) / blocks);
      CHECK(std::abs(double(failures) / blocks - expect) <= 4.0 * sigma);
    }
  }

  // monotonicity invariants
  double prev_gamma = -1.0;
  for (int i = 0; i <= 200; ++i) {
    double x = -1.0 + double(i) * 0.01;
    double gx = gamma_big(x);
    CHECK(gx >= prev_gamma - 1e-12);
    prev_gamma = gx;
  }
  for (BoundKind kind : {BoundKind::BoundedStorage, BoundKind::StrongConverse,
                         BoundKind::Collision, BoundKind::Erasure, BoundKind::BestOfAll,
                         BoundKind::Rational}) {
    double prev = 2.0;
    for (int i = 0; i <= 100; ++i) {
      double r = double(i) * 0.01;
      double v = minentropy_rate(kind, r).bits_per_photon;
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
  double prev_leak = 2.0;
  for (int i = 0; i <= 100; ++i) {
    double r = double(i) * 0.01;
    double leak = ec_leak_rate(r);
    CHECK(leak < prev_leak);
    prev_leak = leak;
  }
  for (double h_lo : {10.0, 20.0, 40.0})
    CHECK(ell_finite(h_lo, 5.0, 0.01) <= ell_finite(h_lo + 1.0, 5.0, 0.01));
}

}  // namespace

int main() {
  run_criterion("trusted-noise threshold", threshold_criterion);
  run_criterion("memory-bound curves", bound_curves_criterion);
  run_criterion("collision/erasure crossover", crossover_criterion);
  run_criterion("noisy-measurement secure region", secure_region_criterion);
  run_criterion("storage-rate boundary", storage_boundary_criterion);
  run_criterion("correlated-memory ordering", correlated_ordering_criterion);
  run_criterion("honest-session statistics", honest_protocol_criterion);
  run_criterion("channel error statistics", channel_statistics_criterion);
  run_criterion("attack oracle agreement", attack_oracle_criterion);
  run_criterion("exponent inequality", exponent_inequality_criterion);
  run_criterion("property suites", property_suites_criterion);
  if (g_failures == 0)
    std::cout << "all criteria satisfied\n";
  else
    std::cout << g_failures << " criteria failed\n";
  return g_failures;
}
