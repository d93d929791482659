#pragma once

// Simulated cheating-receiver strategies.  Their empirical guessing
// statistics validate the min-entropy bounds: per-bit and full-string success
// frequencies are compared against closed-form targets, never against smooth
// entropies directly (smoothing is not observable in finite sampling).
// The guessing target is always the complementary substring X_{1-B}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "otns/bits.hpp"
#include "otns/protocol.hpp"
#include "otns/stats.hpp"

namespace otns {

enum class AttackKind {
  MeasureImmediately,    // per-symbol random basis, honest-device noise
  StoreAllDepolarizing,  // store everything; measure post-announcement through
                         // a depolarising memory with parameter memory_r
  StoreFraction,         // store a nu-fraction, measure the rest immediately
  ErasureFlagMemory,     // symbols survive intact with known flag w.p. memory_r
};

inline std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::MeasureImmediately: return "measure_immediately";
    case AttackKind::StoreAllDepolarizing: return "store_all_depolarizing";
    case AttackKind::StoreFraction: return "store_fraction";
    case AttackKind::ErasureFlagMemory: return "erasure_flag_memory";
  }
  throw std::logic_error("to_string(AttackKind): invalid tag");
}

inline AttackKind attack_kind_from_string(std::string_view s) {
  if (s == "measure_immediately") return AttackKind::MeasureImmediately;
  if (s == "store_all_depolarizing") return AttackKind::StoreAllDepolarizing;
  if (s == "store_fraction") return AttackKind::StoreFraction;
  if (s == "erasure_flag_memory") return AttackKind::ErasureFlagMemory;
  throw std::invalid_argument("unknown attack strategy: " + std::string(s));
}

struct AttackStrategy {
  AttackKind kind = AttackKind::StoreAllDepolarizing;
  double memory_r = 1.0;  // memory depolarising/survival parameter
  double nu = 1.0;        // stored fraction (StoreFraction only)
};

struct AttackStats {
  std::int64_t trials = 0;
  std::int64_t target_bits = 0;  // requested k for full-string tallies (0 = whole substring)
  // Per-bit tallies over all complementary-substring bits.
  std::int64_t per_bit_successes = 0;
  std::int64_t per_bit_opportunities = 0;
  // Conditional tallies for strategies that measure with a basis choice.
  std::int64_t matched_successes = 0, matched_opportunities = 0;
  std::int64_t mismatched_successes = 0, mismatched_opportunities = 0;
  // Full-string tallies over the first k target bits of each eligible trial.
  std::int64_t full_string_successes = 0;
  std::int64_t full_string_trials = 0;
  // Per-trial bookkeeping (ErasureFlagMemory populates erased_counts).
  std::vector<std::int64_t> erased_counts;
  std::vector<std::int64_t> stored_counts;

  double per_bit_frequency() const {
    return per_bit_opportunities ? double(per_bit_successes) / double(per_bit_opportunities) : 0.0;
  }
  double full_string_frequency() const {
    return full_string_trials ? double(full_string_successes) / double(full_string_trials) : 0.0;
  }
};

// Closed-form per-bit success probability of a strategy on a complementary-
// substring bit (erasure memory ignores preparation noise by construction:
// it models the relaxation where surviving qubits are noiseless).
inline double analytic_per_bit_success(const AttackStrategy& st, const NoiseModel& nm) {
  double stored = (1.0 + nm.r_pre * st.memory_r) / 2.0;
  double immediate = 0.5 * (1.0 + nm.r1()) / 2.0 + 0.5 * 0.5;
  switch (st.kind) {
    case AttackKind::MeasureImmediately: return immediate;
    case AttackKind::StoreAllDepolarizing: return stored;
    case AttackKind::StoreFraction: return st.nu * stored + (1.0 - st.nu) * immediate;
    case AttackKind::ErasureFlagMemory: return (1.0 + st.memory_r) / 2.0;
  }
  throw std::logic_error("analytic_per_bit_success: invalid kind");
}

// Simulates `trials` protocol runs against a cheating Bob.  target_bits > 0
// restricts the full-string tally to the first target_bits complementary
// bits (trials with a shorter target are skipped for that tally only).
// Erasure bursts follow config.noise.m: blocks of m consecutive stored
// symbols are erased jointly, leaving per-bit marginals unchanged.
inline AttackStats run_attack(const ProtocolConfig& config, const AttackStrategy& strategy,
                              std::int64_t trials, std::int64_t target_bits = 0) {
  {
    auto errs = config.validate();
    if (!errs.empty())
      throw std::invalid_argument("run_attack: invalid config: " + errs.front());
    if (!(strategy.memory_r >= 0.0 && strategy.memory_r <= 1.0))
      throw std::invalid_argument("run_attack: memory_r outside [0, 1]");
    if (!(strategy.nu >= 0.0 && strategy.nu <= 1.0))
      throw std::invalid_argument("run_attack: nu outside [0, 1]");
    if (trials < 1) throw std::invalid_argument("run_attack: trials must be >= 1");
    if (target_bits < 0) throw std::invalid_argument("run_attack: target_bits must be >= 0");
  }
  const NoiseModel& nm = config.noise;
  AttackStats stats;
  stats.trials = trials;
  stats.target_bits = target_bits;

  for (std::int64_t tix = 0; tix < trials; ++tix) {
    RngStream rng(config.master_seed, std::uint64_t(tix));
    const std::int64_t np = config.n_prime;
    Bits x_full = rng.random_bits(std::size_t(np));
    Bits theta_full = rng.random_bits(std::size_t(np));
    const std::size_t np_sz = std::size_t(np);
    std::vector<std::uint8_t> lost(np_sz), prep_depol(np_sz);
    for (std::int64_t j = 0; j < np; ++j)
      lost[std::size_t(j)] = std::uint8_t(rng.bernoulli(1.0 - config.effective_eta()));
    for (std::int64_t j = 0; j < np; ++j)
      prep_depol[std::size_t(j)] = std::uint8_t(rng.bernoulli(1.0 - nm.r_pre));
    int b = rng.bit();

    std::vector<std::int64_t> detected;
    for (std::int64_t j = 0; j < np; ++j)
      if (!lost[std::size_t(j)]) detected.push_back(j);
    const std::size_t n = detected.size();

    // Which detected positions go to quantum storage.
    std::vector<std::uint8_t> is_stored(n, 0);
    switch (strategy.kind) {
      case AttackKind::MeasureImmediately: break;
      case AttackKind::StoreAllDepolarizing:
      case AttackKind::ErasureFlagMemory:
        std::fill(is_stored.begin(), is_stored.end(), std::uint8_t(1));
        break;
      case AttackKind::StoreFraction: {
        std::size_t k = std::size_t(std::llround(strategy.nu * double(n)));
        for (std::size_t p : rng.random_subset(n, k)) is_stored[p] = 1;
        break;
      }
    }

    // Pre-announcement phase: immediate measurements in a per-symbol random
    // basis; erasure flags drawn per burst block of stored symbols.
    std::vector<std::uint8_t> imm_basis(n, 0), imm_out(n, 0), erased(n, 0);
    {
      std::int64_t stored_seen = 0;
      bool block_erased = false;
      for (std::size_t p = 0; p < n; ++p) {
        if (!is_stored[p]) {
          imm_basis[p] = std::uint8_t(rng.bit());
          bool mea_depol = rng.bernoulli(1.0 - nm.r_mea);
          bool intact = !prep_depol[std::size_t(detected[p])] && !mea_depol;
          if (imm_basis[p] == theta_full[std::size_t(detected[p])] && intact)
            imm_out[p] = x_full[std::size_t(detected[p])];
          else
            imm_out[p] = std::uint8_t(rng.bit());
        } else if (strategy.kind == AttackKind::ErasureFlagMemory) {
          if (stored_seen % std::int64_t(nm.m) == 0)
            block_erased = !rng.bernoulli(strategy.memory_r);
          erased[p] = std::uint8_t(block_erased);
          ++stored_seen;
        }
      }
    }

    // Basis announcement; the cheater guesses every complementary bit.
    std::int64_t erased_count = 0, stored_count = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (is_stored[p]) ++stored_count;
      if (is_stored[p] && erased[p]) ++erased_count;
    }
    std::vector<std::int64_t> target;  // positions p with theta_p = 1 - B
    for (std::size_t p = 0; p < n; ++p)
      if (int(theta_full[std::size_t(detected[p])]) == 1 - b) target.push_back(std::int64_t(p));

    std::int64_t k_full = target_bits > 0 ? target_bits : std::int64_t(target.size());
    bool eligible = std::int64_t(target.size()) >= k_full && k_full > 0;
    bool all_correct = true;
    std::int64_t seen = 0;
    for (std::int64_t p : target) {
      std::uint8_t truth = x_full[std::size_t(detected[std::size_t(p)])];
      std::uint8_t theta_p = theta_full[std::size_t(detected[std::size_t(p)])];
      std::uint8_t guess;
      if (!is_stored[std::size_t(p)]) {
        guess = imm_out[std::size_t(p)];
        bool matched = imm_basis[std::size_t(p)] == theta_p;
        (matched ? stats.matched_opportunities : stats.mismatched_opportunities) += 1;
        if (guess == truth) (matched ? stats.matched_successes : stats.mismatched_successes) += 1;
      } else if (strategy.kind == AttackKind::ErasureFlagMemory) {
        guess = erased[std::size_t(p)] ? std::uint8_t(rng.bit()) : truth;
      } else {
        // Depolarising storage measured in the announced basis.
        bool mem_depol = rng.bernoulli(1.0 - strategy.memory_r);
        bool intact = !prep_depol[std::size_t(detected[std::size_t(p)])] && !mem_depol;
        guess = intact ? truth : std::uint8_t(rng.bit());
      }
      ++stats.per_bit_opportunities;
      bool correct = guess == truth;
      if (correct) ++stats.per_bit_successes;
      if (eligible && seen < k_full) {
        if (!correct) all_correct = false;
        ++seen;
      }
    }
    if (eligible) {
      ++stats.full_string_trials;
      if (all_correct) ++stats.full_string_successes;
    }
    if (strategy.kind == AttackKind::ErasureFlagMemory) stats.erased_counts.push_back(erased_count);
    stats.stored_counts.push_back(stored_count);
  }
  return stats;
}

// Empirical guessing exponent -(1/k) log2(success frequency) with a
// Clopper-Pearson 95% interval mapped through the same transform.  With zero
// successes the point estimate is degenerate (infinite); the lower edge from
// the upper confidence limit is still meaningful as a one-sided bound.
struct GuessingExponent {
  double exponent = 0.0;
  double ci_lo = 0.0;  // from the upper confidence limit of the frequency
  double ci_hi = 0.0;  // from the lower confidence limit; +inf when degenerate
  bool degenerate = false;
};

inline GuessingExponent empirical_guessing_exponent(const AttackStats& stats, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("empirical_guessing_exponent: k must be >= 1");
  if (stats.full_string_trials < 1)
    throw std::invalid_argument("empirical_guessing_exponent: no eligible trials");
  GuessingExponent out;
  Interval ci = clopper_pearson(stats.full_string_successes, stats.full_string_trials, 0.95);
  out.ci_lo = -std::log2(ci.hi) / double(k);
  if (stats.full_string_successes == 0) {
    out.degenerate = true;
    out.exponent = std::numeric_limits<double>::infinity();
    out.ci_hi = std::numeric_limits<double>::infinity();
  } else {
    out.exponent = -std::log2(stats.full_string_frequency()) / double(k);
    out.ci_hi = ci.lo > 0.0 ? -std::log2(ci.lo) / double(k)
                            : std::numeric_limits<double>::infinity();
  }
  return out;
}

// Erased-count concentration report against the independent-erasure reference
// Binomial(n, 1-r): the mean z-score flags deviations beyond 4 sigma; burst
// erasure (m > 1) keeps the mean but multiplies the variance by about m,
// which shows up in variance_ratio.
struct ConcentrationReport {
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double analytic_mean = 0.0;
  double analytic_variance = 0.0;  // per-trial binomial reference
  double mean_z = 0.0;
  double variance_ratio = 1.0;
  bool flagged = false;
};

inline ConcentrationReport erased_count_concentration(const AttackStats& stats, double r) {
  if (stats.erased_counts.empty())
    throw std::invalid_argument("erased_count_concentration: no erasure-strategy trials");
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("erased_count_concentration: r outside [0, 1]");
  const std::size_t t = stats.erased_counts.size();
  ConcentrationReport rep;
  double mean_n = 0.0;
  for (std::size_t i = 0; i < t; ++i) {
    rep.empirical_mean += double(stats.erased_counts[i]);
    mean_n += double(stats.stored_counts[i]);
  }
  rep.empirical_mean /= double(t);
  mean_n /= double(t);
  for (std::size_t i = 0; i < t; ++i) {
    double d = double(stats.erased_counts[i]) - rep.empirical_mean;
    rep.empirical_variance += d * d;
  }
  rep.empirical_variance = t > 1 ? rep.empirical_variance / double(t - 1) : 0.0;
  rep.analytic_mean = (1.0 - r) * mean_n;
  rep.analytic_variance = r * (1.0 - r) * mean_n;
  if (rep.analytic_variance > 0.0) {
    rep.mean_z = (rep.empirical_mean - rep.analytic_mean) /
                 std::sqrt(rep.analytic_variance / double(t));
    rep.variance_ratio = rep.empirical_variance / rep.analytic_variance;
  } else {
    // Deterministic cases r = 0 and r = 1: any deviation at all is flagged.
    rep.mean_z = rep.empirical_mean == rep.analytic_mean ? 0.0
                 : std::numeric_limits<double>::infinity();
    rep.variance_ratio = rep.empirical_variance == 0.0 ? 1.0
                 : std::numeric_limits<double>::infinity();
  }
  rep.flagged = !(std::abs(rep.mean_z) <= 4.0);
  return rep;
}

inline nlohmann::json attack_stats_json(const AttackStats& s) {
  return nlohmann::json{{"trials", s.trials},
                        {"target_bits", s.target_bits},
                        {"per_bit_successes", s.per_bit_successes},
                        {"per_bit_opportunities", s.per_bit_opportunities},
                        {"matched_successes", s.matched_successes},
                        {"matched_opportunities", s.matched_opportunities},
                        {"mismatched_successes", s.mismatched_successes},
                        {"mismatched_opportunities", s.mismatched_opportunities},
                        {"full_string_successes", s.full_string_successes},
                        {"full_string_trials", s.full_string_trials},
                        {"erased_counts", s.erased_counts},
                        {"stored_counts", s.stored_counts}};
}

}  // namespace otns
