#pragma once

// Deterministic-seed Monte-Carlo simulation of one error-tolerant 1-2 ROT
// session between honest Alice and honest Bob: preparation, loss,
// depolarisation, detection reporting, the loss statistical test, the waiting
// phase (a no-op marker here; its physical effect is the cheater's memory
// noise), basis announcement and sifting, syndromes, Toeplitz hashing.
//
// Quantum states are simulated stochastically per symbol: every channel in
// scope (depolarising, erasure, loss) commutes with the BB84 measurement
// statistics, so sampling outcomes with the stated conditional probabilities
// is exact and costs O(n).

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "otns/bits.hpp"
#include "otns/coding.hpp"
#include "otns/rates.hpp"
#include "otns/rng.hpp"
#include "otns/stats.hpp"
#include "otns/version.hpp"

namespace otns {

// One prepared BB84 symbol after transit.  Lost symbols carry no measurement
// outcome downstream; `depolarized` records the preparation-stage noise draw.
struct ChannelSymbol {
  std::uint8_t bit = 0;
  std::uint8_t basis = 0;
  bool lost = false;
  bool depolarized = false;
};

enum class EcBackend {
  Code,    // real syndromes + coset-leader decoding
  Oracle,  // success iff every block's true error weight <= t; leakage charged
           // at the asymptotic rate ceil(n_C * h((1+r1)/2))
};

struct EcConfig {
  EcBackend backend = EcBackend::Code;
  LinearCode code = LinearCode::hamming74();  // block geometry is used by both backends
};

// ell selection: computed per session via ell_finite (default), or fixed.
struct EllPolicy {
  bool automatic = true;
  std::int64_t fixed = 0;
};

struct ProtocolConfig {
  std::int64_t n_prime = 10000;
  NoiseModel noise;
  SecurityParams security;
  EcConfig ec;
  BoundKind ell_bound = BoundKind::Rational;  // min-entropy bound backing the ell budget
  EllPolicy ell_policy;
  std::uint64_t master_seed = 0;
  // Diagnostics: actual channel transmittance when it differs from the
  // advertised eta the loss test checks against (exercises true aborts).
  std::optional<double> eta_actual;

  double effective_eta() const { return eta_actual.value_or(noise.eta); }

  // Capped min-entropy rate feeding the ell budget.
  double hmin_rate_for_ell() const {
    double rate = minentropy_rate(ell_bound, noise.r_dis(), noise.nu, noise.m).bits_per_photon;
    return std::min(0.5, std::max(0.0, rate));
  }

  // Syndrome bits charged against the ell budget for a substring of n_c bits.
  std::int64_t charged_syndrome_bits(std::int64_t n_c) const {
    if (ec.backend == EcBackend::Code) {
      std::int64_t blocks = (n_c + ec.code.block_len() - 1) / ec.code.block_len();
      return blocks * ec.code.syndrome_bits();
    }
    return std::int64_t(std::ceil(double(n_c) * ec_leak_rate(noise.r1())));
  }

  std::int64_t ell_estimate() const {
    double n_c = noise.eta * double(n_prime) / 2.0;
    std::int64_t charged = charged_syndrome_bits(std::int64_t(std::ceil(n_c)));
    return ell_finite(hmin_rate_for_ell() * n_c, charged, security.eps_h);
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> errs = noise.validate();
    for (const auto& e : security.validate()) errs.push_back(e);
    if (n_prime < 1) errs.push_back("n_prime must be >= 1");
    if (eta_actual && !(*eta_actual > 0.0 && *eta_actual <= 1.0))
      errs.push_back("eta_actual outside (0, 1]");
    if (noise.eta * double(n_prime) < 2.0 * double(ec.code.block_len()))
      errs.push_back("expected detections eta * n_prime below two code blocks");
    if (!ell_policy.automatic) {
      if (ell_policy.fixed < 0) errs.push_back("fixed ell must be >= 0");
      else if (errs.empty() && ell_policy.fixed > ell_estimate())
        errs.push_back("fixed ell " + std::to_string(ell_policy.fixed) +
                       " exceeds the ell_finite estimate " + std::to_string(ell_estimate()) +
                       " for the configured bound");
    }
    return errs;
  }
};

// Loss test over the four preparation cells (x, theta), cell index 2x + theta:
// pass iff every cell's detection count is within the two-sided Hoeffding
// radius sqrt(cell_size ln(8/eps_test)/2) of eta * cell_size.  The union
// bound over 4 cells caps the honest false-abort probability at eps_test;
// the per-cell check also catches detection rates that depend on the
// prepared state.
struct LossTestResult {
  bool pass = true;
  int offending_cell = -1;
  std::array<double, 4> deviation{};
  std::array<double, 4> radius{};
};

inline LossTestResult loss_test(const std::array<std::int64_t, 4>& cell_sizes,
                                const std::array<std::int64_t, 4>& detections, double eta,
                                double eps_test) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("loss_test: eta outside (0, 1]");
  if (!(eps_test > 0.0 && eps_test < 1.0))
    throw std::domain_error("loss_test: eps_test outside (0, 1)");
  LossTestResult res;
  for (int c = 0; c < 4; ++c) {
    if (detections[std::size_t(c)] < 0 || detections[std::size_t(c)] > cell_sizes[std::size_t(c)])
      throw std::domain_error("loss_test: detections outside [0, cell_size]");
    double size = double(cell_sizes[std::size_t(c)]);
    res.deviation[std::size_t(c)] = std::abs(double(detections[std::size_t(c)]) - eta * size);
    res.radius[std::size_t(c)] = std::sqrt(size * std::log(8.0 / eps_test) / 2.0);
    if (res.deviation[std::size_t(c)] > res.radius[std::size_t(c)] && res.pass) {
      res.pass = false;
      res.offending_cell = c;
    }
  }
  return res;
}

// Partition of the detected positions by Alice's announced basis:
// I_C = { p in [0, n) : theta_p = C } over the sifted basis string.
inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> sift(
    const Bits& theta_detected) {
  std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> out;
  for (std::size_t p = 0; p < theta_detected.size(); ++p)
    (theta_detected[p] ? out.second : out.first).push_back(std::int64_t(p));
  return out;
}

inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> sift(
    const Bits& theta_full, const std::vector<std::int64_t>& detected) {
  return sift(select_bits(theta_full, detected));
}

inline std::pair<Bits, Bits> alice_outputs(const Bits& x0, const Bits& x1, const ToeplitzSeed& f0,
                                           const ToeplitzSeed& f1) {
  return {toeplitz_hash(f0, x0), toeplitz_hash(f1, x1)};
}

// Decode-then-hash on Bob's side.  ec_failed reflects the decoder's failure
// flags; silent miscorrection beyond the code radius is caught against ground
// truth by the session driver, which also compares with Alice's X_B.
inline std::pair<Bits, bool> bob_outputs(const Bits& y_b, const Syndrome& sigma_b,
                                         const ToeplitzSeed& f_b, const LinearCode& code) {
  DecodeResult dec = decode(code, y_b, sigma_b);
  return {toeplitz_hash(f_b, dec.corrected), dec.any_failed};
}

struct Transcript {
  std::int64_t session = 0;
  Bits x_full, theta_full;                     // Alice's prepared values, length n_prime
  std::vector<std::int64_t> detected_indices;  // reported by Bob, ascending
  Bits x, theta, y;                            // X, Theta, Y: detected substrings, length n
  int b = 0;                                   // Bob's choice bit B
  std::vector<std::int64_t> i0, i1;            // I_0, I_1: sifted index sets into [0, n)
  Syndrome sigma0, sigma1;                     // announced syndromes (empty under oracle EC)
  std::int64_t charged_syndrome0 = 0;          // bits charged against the ell budget
  std::int64_t charged_syndrome1 = 0;
  ToeplitzSeed f0, f1;                         // announced hash seeds
  Bits s0, s1;                                 // Alice's outputs S_0, S_1
  Bits s_tilde_b;                              // Bob's output
  std::int64_t ell = 0;
  std::optional<std::string> abort_reason;     // "loss-test" or "configuration"
  bool ec_failed = false;
};

// Matched/mismatched-basis measurement statistics of one or more transcripts.
struct ChannelStats {
  std::int64_t matched = 0, matched_errors = 0;
  std::int64_t mismatched = 0, mismatched_agree = 0;

  void accumulate(const Transcript& t) {
    for (std::size_t p = 0; p < t.theta.size(); ++p) {
      if (int(t.theta[p]) == t.b) {
        ++matched;
        if (t.y[p] != t.x[p]) ++matched_errors;
      } else {
        ++mismatched;
        if (t.y[p] == t.x[p]) ++mismatched_agree;
      }
    }
  }
};

// Probability that any block of an n_c-bit substring exceeds the correction
// radius when each bit flips independently with probability p — for radius-t
// coset-leader decoding this is exactly the session failure probability,
// since a block with weight > t is either flagged or miscorrected.
inline double analytic_ec_session_failure(const LinearCode& code, std::int64_t n_c, double p) {
  const int n_b = code.block_len();
  const int t = code.correction_radius();
  std::int64_t full = n_c / n_b;
  std::int64_t tail = n_c % n_b;
  double log_ok = 0.0;
  if (full > 0) {
    double ok = binom_lower_tail(n_b, t, p);
    if (ok <= 0.0) return 1.0;
    log_ok += double(full) * std::log(ok);
  }
  if (tail > 0) {
    double ok = binom_lower_tail(tail, t, p);
    if (ok <= 0.0) return 1.0;
    log_ok += std::log(ok);
  }
  return -std::expm1(log_ok);
}

// Runs one honest session.  Per-session randomness comes from the stream
// (master_seed, session_index); the draw order is part of the determinism
// contract: x_full, theta_full, loss flags, preparation depolarisation flags,
// B, per-detected-symbol measurement draws, then the two hash seeds.
inline Transcript run_honest_session(const ProtocolConfig& config, std::int64_t session_index = 0) {
  Transcript tr;
  tr.session = session_index;
  {
    auto errs = config.validate();
    if (!errs.empty()) {
      tr.abort_reason = "configuration";
      return tr;
    }
  }
  RngStream rng(config.master_seed, std::uint64_t(session_index));
  const NoiseModel& nm = config.noise;
  const std::int64_t np = config.n_prime;
  const double eta_eff = config.effective_eta();

  tr.x_full = rng.random_bits(std::size_t(np));
  tr.theta_full = rng.random_bits(std::size_t(np));
  const std::size_t np_sz = std::size_t(np);
  std::vector<std::uint8_t> lost(np_sz), prep_depol(np_sz);
  for (std::int64_t j = 0; j < np; ++j)
    lost[std::size_t(j)] = std::uint8_t(rng.bernoulli(1.0 - eta_eff));
  for (std::int64_t j = 0; j < np; ++j)
    prep_depol[std::size_t(j)] = std::uint8_t(rng.bernoulli(1.0 - nm.r_pre));
  tr.b = rng.bit();

  for (std::int64_t j = 0; j < np; ++j)
    if (!lost[std::size_t(j)]) tr.detected_indices.push_back(j);

  // Bob measures every detected symbol immediately in basis B; the outcome is
  // the prepared bit iff bases match and neither noise stage struck,
  // otherwise uniform.  Net matched-basis error probability (1 - r1)/2.
  Bits y_detected;
  y_detected.reserve(tr.detected_indices.size());
  for (std::int64_t j : tr.detected_indices) {
    bool mea_depol = rng.bernoulli(1.0 - nm.r_mea);
    bool intact = !prep_depol[std::size_t(j)] && !mea_depol;
    if (int(tr.theta_full[std::size_t(j)]) == tr.b && intact)
      y_detected.push_back(tr.x_full[std::size_t(j)]);
    else
      y_detected.push_back(std::uint8_t(rng.bit()));
  }

  std::array<std::int64_t, 4> cell_sizes{}, cell_detections{};
  for (std::int64_t j = 0; j < np; ++j) {
    int cell = 2 * int(tr.x_full[std::size_t(j)]) + int(tr.theta_full[std::size_t(j)]);
    ++cell_sizes[std::size_t(cell)];
    if (!lost[std::size_t(j)]) ++cell_detections[std::size_t(cell)];
  }
  LossTestResult lt = loss_test(cell_sizes, cell_detections, nm.eta, config.security.eps_test);
  if (!lt.pass) {
    tr.abort_reason = "loss-test";
    return tr;
  }

  // Waiting phase Delta-t: no-op marker; basis announcement and sifting.
  tr.x = select_bits(tr.x_full, tr.detected_indices);
  tr.theta = select_bits(tr.theta_full, tr.detected_indices);
  tr.y = std::move(y_detected);
  std::tie(tr.i0, tr.i1) = sift(tr.theta);
  Bits x0 = select_bits(tr.x, tr.i0);
  Bits x1 = select_bits(tr.x, tr.i1);

  if (config.ec.backend == EcBackend::Code) {
    tr.sigma0 = syndrome(config.ec.code, x0);
    tr.sigma1 = syndrome(config.ec.code, x1);
    tr.charged_syndrome0 = std::int64_t(tr.sigma0.bits.size());
    tr.charged_syndrome1 = std::int64_t(tr.sigma1.bits.size());
  } else {
    tr.charged_syndrome0 = config.charged_syndrome_bits(std::int64_t(x0.size()));
    tr.charged_syndrome1 = config.charged_syndrome_bits(std::int64_t(x1.size()));
  }

  if (config.ell_policy.automatic) {
    double rate = config.hmin_rate_for_ell();
    std::int64_t ell0 = ell_finite(rate * double(x0.size()), tr.charged_syndrome0,
                                   config.security.eps_h);
    std::int64_t ell1 = ell_finite(rate * double(x1.size()), tr.charged_syndrome1,
                                   config.security.eps_h);
    tr.ell = std::min(ell0, ell1);
  } else {
    tr.ell = config.ell_policy.fixed;
  }

  tr.f0 = {rng.random_bits(toeplitz_seed_len(x0.size(), std::size_t(tr.ell))),
           std::size_t(tr.ell)};
  tr.f1 = {rng.random_bits(toeplitz_seed_len(x1.size(), std::size_t(tr.ell))),
           std::size_t(tr.ell)};
  std::tie(tr.s0, tr.s1) = alice_outputs(x0, x1, tr.f0, tr.f1);

  const Bits& x_b = tr.b ? x1 : x0;
  Bits y_b = select_bits(tr.y, tr.b ? tr.i1 : tr.i0);
  const ToeplitzSeed& f_b = tr.b ? tr.f1 : tr.f0;
  Bits x_tilde;
  bool flagged = false;
  if (config.ec.backend == EcBackend::Code) {
    DecodeResult dec = decode(config.ec.code, y_b, tr.b ? tr.sigma1 : tr.sigma0);
    x_tilde = std::move(dec.corrected);
    flagged = dec.any_failed;
  } else {
    // Oracle EC: Bob learns X_B iff every block's true error weight is within
    // the correction radius of the configured block geometry.
    const int n_b = config.ec.code.block_len();
    const int t = config.ec.code.correction_radius();
    int weight = 0;
    bool failed = false;
    for (std::size_t p = 0; p < x_b.size(); ++p) {
      weight += int(x_b[p] != y_b[p]);
      if ((p + 1) % std::size_t(n_b) == 0 || p + 1 == x_b.size()) {
        if (weight > t) { failed = true; break; }
        weight = 0;
      }
    }
    flagged = failed;
    x_tilde = failed ? y_b : x_b;
  }
  tr.ec_failed = flagged || x_tilde != x_b;
  tr.s_tilde_b = toeplitz_hash(f_b, x_tilde);
  return tr;
}

// ---- JSON serialization (hex-packed bit strings) ----

inline nlohmann::json bits_json(const Bits& b) {
  return nlohmann::json{{"len", b.size()}, {"hex", bits_to_hex(b)}};
}

inline nlohmann::json seed_json(const ToeplitzSeed& s) {
  nlohmann::json j = bits_json(s.bits);
  j["output_len"] = s.output_len;
  return j;
}

inline nlohmann::json config_json(const ProtocolConfig& c) {
  nlohmann::json code{{"name", c.ec.code.name()},
                      {"block_len", c.ec.code.block_len()},
                      {"dimension", c.ec.code.dimension()},
                      {"correction_radius", c.ec.code.correction_radius()},
                      {"parity_check_hex", bits_to_hex(c.ec.code.parity_check_bits())}};
  nlohmann::json j{{"n_prime", c.n_prime},
                   {"r_pre", c.noise.r_pre},
                   {"r_mea", c.noise.r_mea},
                   {"r_mem", c.noise.r_mem},
                   {"eta", c.noise.eta},
                   {"nu", c.noise.nu},
                   {"m", c.noise.m},
                   {"eps_s", c.security.eps_s},
                   {"eps_h", c.security.eps_h},
                   {"eps_prime", c.security.eps_prime},
                   {"eps_test", c.security.eps_test},
                   {"eps_ec", c.security.eps_ec},
                   {"ec_backend", c.ec.backend == EcBackend::Code ? "code" : "oracle"},
                   {"code", code},
                   {"ell_bound", std::string(to_string(c.ell_bound))},
                   {"ell_policy", c.ell_policy.automatic
                                      ? nlohmann::json("auto")
                                      : nlohmann::json(c.ell_policy.fixed)},
                   {"loss_test", "hoeffding-4cell"},
                   {"sampling", "asymptotic"}};
  if (c.eta_actual) j["eta_actual"] = *c.eta_actual;
  return j;
}

inline nlohmann::json transcript_to_json(const Transcript& t, const ProtocolConfig& config,
                                         const std::string& command = "") {
  nlohmann::json idx0(t.i0), idx1(t.i1), det(t.detected_indices);
  nlohmann::json j{{"x_full", bits_json(t.x_full)},
                   {"theta_full", bits_json(t.theta_full)},
                   {"detected_indices", det},
                   {"X", bits_json(t.x)},
                   {"Theta", bits_json(t.theta)},
                   {"B", t.b},
                   {"Y", bits_json(t.y)},
                   {"I0", idx0},
                   {"I1", idx1},
                   {"Sigma0", bits_json(t.sigma0.bits)},
                   {"Sigma1", bits_json(t.sigma1.bits)},
                   {"F0", seed_json(t.f0)},
                   {"F1", seed_json(t.f1)},
                   {"S0", bits_json(t.s0)},
                   {"S1", bits_json(t.s1)},
                   {"S_tilde_B", bits_json(t.s_tilde_b)},
                   {"abort_reason", t.abort_reason ? nlohmann::json(*t.abort_reason)
                                                  : nlohmann::json(nullptr)},
                   {"ec_failed", t.ec_failed},
                   {"ell", t.ell}};
  nlohmann::json meta = config_json(config);
  meta["version"] = kVersion;
  meta["seed"] = config.master_seed;
  meta["session"] = t.session;
  meta["charged_syndrome_bits"] = {t.charged_syndrome0, t.charged_syndrome1};
  if (!command.empty()) meta["command"] = command;
  j["meta"] = meta;
  return j;
}

}  // namespace otns
