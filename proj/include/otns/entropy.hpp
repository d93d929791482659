#pragma once

// Entropic quantities and min-entropy lower bounds for a depolarising-memory
// adversary: bounded-storage, strong-converse, collision-entropy (Gamma/g),
// erasure, combined, rational-receiver, and burst-correlated variants, plus
// the finite-size bounds they derive from.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "otns/numerics.hpp"

namespace otns {

enum class BoundKind {
  BoundedStorage,
  StrongConverse,
  Collision,
  Erasure,
  BestOfAll,
  Rational,
  CorrelatedCollision,
  CorrelatedBest,
};

// Stable lowercase serialization used in CSV column headers.
inline std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::BoundedStorage: return "bounded_storage";
    case BoundKind::StrongConverse: return "strong_converse";
    case BoundKind::Collision: return "collision";
    case BoundKind::Erasure: return "erasure";
    case BoundKind::BestOfAll: return "best_of_all";
    case BoundKind::Rational: return "rational";
    case BoundKind::CorrelatedCollision: return "correlated_collision";
    case BoundKind::CorrelatedBest: return "correlated_best";
  }
  throw std::logic_error("to_string(BoundKind): invalid tag");
}

inline BoundKind bound_kind_from_string(std::string_view s) {
  if (s == "bounded_storage") return BoundKind::BoundedStorage;
  if (s == "strong_converse") return BoundKind::StrongConverse;
  if (s == "collision") return BoundKind::Collision;
  if (s == "erasure") return BoundKind::Erasure;
  if (s == "best_of_all") return BoundKind::BestOfAll;
  if (s == "rational") return BoundKind::Rational;
  if (s == "correlated_collision") return BoundKind::CorrelatedCollision;
  if (s == "correlated_best") return BoundKind::CorrelatedBest;
  throw std::invalid_argument("unknown bound kind: " + std::string(s));
}

// An entropy rate in bits per received photon.  Raw values may be negative
// (a trivial bound); the rate functions below clamp where their definition
// requires it.
struct EntropyValue {
  double bits_per_photon = 0.0;
};

namespace detail {

inline constexpr double kDomainTol = 1e-12;

inline double checked(double v, double lo, double hi, const char* name) {
  if (!(v >= lo - kDomainTol && v <= hi + kDomainTol))
    throw std::domain_error(std::string(name) + " = " + std::to_string(v) +
                            " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return std::clamp(v, lo, hi);
}

}  // namespace detail

// Binary Shannon entropy h(x) in bits, with 0 log 0 == 0.
inline double binary_entropy(double x) {
  x = detail::checked(x, 0.0, 1.0, "binary_entropy: x");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// g(y) = h(y) + y - 1; strictly increasing on [0, 1/2] from -1 to 1/2.
inline double g_func(double y) {
  y = detail::checked(y, 0.0, 1.0, "g_func: y");
  return binary_entropy(y) + y - 1.0;
}

// Gamma(x): identity for x >= 1/2, otherwise the inverse of g on [0, 1/2],
// found by bisection to absolute tolerance 1e-12.  Monotone nondecreasing and
// continuous at the branch point (g(1/2) = 1/2).
inline double gamma_big(double x) {
  if (x < -1.0 - 1e-9)
    throw std::domain_error("gamma_big: x = " + std::to_string(x) + " below -1");
  x = std::max(x, -1.0);
  if (x >= 0.5) return x;
  return bisect_root([x](double y) { return g_func(y) - x; }, 0.0, 0.5, 1e-12);
}

// Strong-converse capacity of the depolarising qubit channel with intact
// probability r: C = 1 - h((1+r)/2).
inline double strong_converse_capacity(double r) {
  r = detail::checked(r, 0.0, 1.0, "strong_converse_capacity: r");
  return 1.0 - binary_entropy((1.0 + r) / 2.0);
}

// Error exponent gamma_r(R) = 1 + sup_{alpha>1} [(alpha-1)(R-1) -
// log2((1+r)^alpha + (1-r)^alpha)] / alpha.  The supremum may sit in the
// interior or at alpha -> infinity; we scan a geometric grid alpha = 1 + 10^v,
// refine the best bracket by golden-section search, evaluate the analytic
// limit R - log2(1+r), and return the largest.  Positive iff
// R > strong_converse_capacity(r).
inline double error_exponent(double r, double R) {
  r = detail::checked(r, 0.0, 1.0, "error_exponent: r");
  R = detail::checked(R, 0.0, 1.0, "error_exponent: R");
  const double q = (1.0 - r) / (1.0 + r);  // in [0, 1]
  auto objective = [&](double alpha) {
    // log2((1+r)^a + (1-r)^a) = a log2(1+r) + log2(1 + q^a), evaluated
    // stably; q^a underflows harmlessly to 0 for r -> 1.
    double s = alpha * std::log2(1.0 + r) + std::log1p(std::pow(q, alpha)) / kLn2;
    return 1.0 + ((alpha - 1.0) * (R - 1.0) - s) / alpha;
  };
  auto at_v = [&](double v) { return objective(1.0 + std::pow(10.0, v)); };

  const int kGrid = 241;
  const double v_lo = -6.0, v_hi = 6.0;
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < kGrid; ++i) {
    double v = v_lo + (v_hi - v_lo) * double(i) / double(kGrid - 1);
    double val = at_v(v);
    if (val > best) { best = val; best_i = i; }
  }
  double step = (v_hi - v_lo) / double(kGrid - 1);
  double a = std::max(v_lo, v_lo + step * double(best_i - 1));
  double b = std::min(v_hi, v_lo + step * double(best_i + 1));
  double v_star = golden_section_max(at_v, a, b, 1e-12);
  best = std::max(best, at_v(v_star));

  double limit = R - std::log2(1.0 + r);  // alpha -> infinity
  return std::max(best, limit);
}

// Smoothing parameter relation: epsilon = exp[-lambda^2 n / (32 log2(4/lambda))].
// The outer exponential is natural-base; the inner log is base 2.
inline double lambda_to_epsilon(std::int64_t n, double lambda) {
  if (n < 1) throw std::domain_error("lambda_to_epsilon: n must be >= 1");
  if (!(lambda > 0.0 && lambda < 0.5))
    throw std::domain_error("lambda_to_epsilon: lambda = " + std::to_string(lambda) +
                            " outside open interval (0, 1/2)");
  return std::exp(-(lambda * lambda * double(n)) / (32.0 * std::log2(4.0 / lambda)));
}

// Inverse of lambda_to_epsilon in lambda (strictly decreasing), by bisection
// to tolerance 1e-12.  epsilon below the lambda -> 1/2 limit is unreachable.
inline double epsilon_to_lambda(std::int64_t n, double epsilon) {
  if (n < 1) throw std::domain_error("epsilon_to_lambda: n must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("epsilon_to_lambda: epsilon outside (0, 1)");
  const double eps_inf = std::exp(-double(n) / 384.0);  // limit at lambda -> 1/2
  if (epsilon <= eps_inf)
    throw std::domain_error("epsilon_to_lambda: epsilon = " + std::to_string(epsilon) +
                            " unreachable for n = " + std::to_string(n) +
                            "; reachable interval is (" + std::to_string(eps_inf) + ", 1)");
  // epsilon(lambda) - target is positive near lambda = 0.
  return bisect_root_open(
      [n, epsilon](double lam) { return lambda_to_epsilon(n, lam) - epsilon; },
      0.0, 0.5, /*positive_at_lo=*/true, 1e-12);
}

// ---- Asymptotic min-entropy rate bounds (bits per received photon) ----

// Bounded-storage bound with storage rate nu: max{0, 1/2 - r nu}.
inline EntropyValue minentropy_rate_bounded(double r, double nu) {
  r = detail::checked(r, 0.0, 1.0, "minentropy_rate_bounded: r");
  nu = detail::checked(nu, 0.0, 1.0, "minentropy_rate_bounded: nu");
  return {std::max(0.0, 0.5 - r * nu)};
}

// Strong-converse bound: max{0, gamma_r(1/2)}; nontrivial iff C(r) < 1/2.
inline EntropyValue minentropy_rate_strong_converse(double r) {
  r = detail::checked(r, 0.0, 1.0, "minentropy_rate_strong_converse: r");
  return {std::max(0.0, error_exponent(r, 0.5))};
}

// Collision-entropy rate of the depolarised EPR pair: 1 - log2(1 + 3r^2).
inline double collision_entropy_rate_depol(double r) {
  r = detail::checked(r, 0.0, 1.0, "collision_entropy_rate_depol: r");
  return 1.0 - std::log1p(3.0 * r * r) / kLn2;
}

// Collision-entropy min-entropy bound: Gamma[1 - log2(1 + 3r^2)].
inline EntropyValue minentropy_rate_collision(double r) {
  return {gamma_big(collision_entropy_rate_depol(r))};
}

// Erasure-channel bound: 1 - r.
inline EntropyValue minentropy_rate_erasure(double r) {
  r = detail::checked(r, 0.0, 1.0, "minentropy_rate_erasure: r");
  return {1.0 - r};
}

// Best of the collision and erasure bounds.
inline EntropyValue minentropy_rate_best(double r) {
  return {std::max(minentropy_rate_collision(r).bits_per_photon,
                   minentropy_rate_erasure(r).bits_per_photon)};
}

// Rational-receiver bound with storage rate nu:
// (1-nu)/2 + nu min{1/2, best(r)}; equals min{1/2, 1/2 + nu(1/2 - r)} wherever
// the erasure branch is active.
inline EntropyValue minentropy_rate_rational(double r, double nu) {
  nu = detail::checked(nu, 0.0, 1.0, "minentropy_rate_rational: nu");
  double best = minentropy_rate_best(r).bits_per_photon;
  return {(1.0 - nu) / 2.0 + nu * std::min(0.5, best)};
}

// Bounded-storage combination of the best bound: (1-nu)/2 + nu best(r).
inline EntropyValue minentropy_rate_bounded_storage_best(double r, double nu) {
  nu = detail::checked(nu, 0.0, 1.0, "minentropy_rate_bounded_storage_best: nu");
  return {(1.0 - nu) / 2.0 + nu * minentropy_rate_best(r).bits_per_photon};
}

// Collision-entropy rate of the burst-correlated memory with burst length m:
// 1 - (1/m) log2[1 + (2^{2m} - 1) r^2]; reduces to the depolarising rate at
// m = 1.  Safe up to m = 64 (2^128 is far below double overflow).
inline double collision_entropy_rate_burst(double r, int m) {
  r = detail::checked(r, 0.0, 1.0, "collision_entropy_rate_burst: r");
  if (m < 1) throw std::domain_error("collision_entropy_rate_burst: m must be >= 1");
  double scale = std::exp2(2.0 * double(m)) - 1.0;
  return 1.0 - std::log1p(scale * r * r) / (kLn2 * double(m));
}

// Correlated-memory min-entropy bound: Gamma[burst collision rate].
inline EntropyValue minentropy_rate_correlated(double r, int m) {
  return {gamma_big(collision_entropy_rate_burst(r, m))};
}

// Correlated bound combined with the m-independent erasure term.
inline EntropyValue minentropy_rate_correlated_best(double r, int m) {
  return {std::max(minentropy_rate_correlated(r, m).bits_per_photon,
                   minentropy_rate_erasure(r).bits_per_photon)};
}

// Dispatch by BoundKind.  nu is used by the storage-rate-aware kinds, m by the
// correlated kinds; both are ignored otherwise.
inline EntropyValue minentropy_rate(BoundKind kind, double r, double nu = 1.0, int m = 1) {
  switch (kind) {
    case BoundKind::BoundedStorage: return minentropy_rate_bounded(r, nu);
    case BoundKind::StrongConverse: return minentropy_rate_strong_converse(r);
    case BoundKind::Collision: return minentropy_rate_collision(r);
    case BoundKind::Erasure: return minentropy_rate_erasure(r);
    case BoundKind::BestOfAll: return minentropy_rate_best(r);
    case BoundKind::Rational: return minentropy_rate_rational(r, nu);
    case BoundKind::CorrelatedCollision: return minentropy_rate_correlated(r, m);
    case BoundKind::CorrelatedBest: return minentropy_rate_correlated_best(r, m);
  }
  throw std::logic_error("minentropy_rate: invalid BoundKind");
}

// ---- Finite-size min-entropy bounds (total bits, not rates) ----

// BB84 uncertainty-relation bound: (1/2 - 2 lambda(n, eps)) n, unclamped.
inline double finite_minentropy_bb84(std::int64_t n, double epsilon) {
  return (0.5 - 2.0 * epsilon_to_lambda(n, epsilon)) * double(n);
}

// Strong-converse finite bound: n gamma_r(1/2 - 2 lambda - (1/n) log2(1/eps')).
// Total smoothing budget for reporting is eps + eps_prime.
inline double finite_minentropy_konig(std::int64_t n, double r, double epsilon,
                                      double epsilon_prime) {
  if (!(epsilon_prime > 0.0 && epsilon_prime <= 1.0))
    throw std::domain_error("finite_minentropy_konig: epsilon_prime outside (0, 1]");
  double lambda = epsilon_to_lambda(n, epsilon);
  double arg = 0.5 - 2.0 * lambda - std::log2(1.0 / epsilon_prime) / double(n);
  if (!(arg >= -detail::kDomainTol && arg <= 1.0 + detail::kDomainTol))
    throw std::domain_error("finite_minentropy_konig: rate argument " + std::to_string(arg) +
                            " leaves [0, 1]");
  return double(n) * error_exponent(r, std::clamp(arg, 0.0, 1.0));
}

// Collision-entropy finite bound: n Gamma(h2) - 1 - log2(2/eps^2).
inline double finite_minentropy_collision(std::int64_t n, double h2, double epsilon) {
  if (n < 1) throw std::domain_error("finite_minentropy_collision: n must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::domain_error("finite_minentropy_collision: epsilon outside (0, 1]");
  return double(n) * gamma_big(h2) - 1.0 - std::log2(2.0 / (epsilon * epsilon));
}

}  // namespace otns
