#pragma once

// Combines the entropy bounds with trusted-noise error-correction costs to
// produce OT bit rates, secure-region boundaries, the trusted-noise
// threshold, and finite-size string lengths.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otns/entropy.hpp"
#include "otns/numerics.hpp"

namespace otns {

// Channel and device parameters.  r_pre/r_mea are trusted (honest-device)
// depolarising parameters, r_mem describes the cheater's storage, eta is the
// channel transmittance, nu the cheater's storage rate, m the burst length of
// the correlated-noise memory model.
struct NoiseModel {
  double r_pre = 1.0;
  double r_mea = 1.0;
  double r_mem = 1.0;
  double eta = 1.0;
  double nu = 1.0;
  int m = 1;

  // Scenario composites: r1 covers both trusted noises (scenario 1), r2 only
  // preparation (scenario 2), r_dis is the total noise a stored qubit suffers.
  double r1() const { return r_pre * r_mea; }
  double r2() const { return r_pre; }
  double r_dis() const { return r_pre * r_mem; }

  std::vector<std::string> validate() const {
    std::vector<std::string> errs;
    auto in01 = [&](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) errs.push_back(std::string(name) + " outside [0, 1]");
    };
    in01(r_pre, "r_pre");
    in01(r_mea, "r_mea");
    in01(r_mem, "r_mem");
    in01(nu, "nu");
    if (!(eta > 0.0 && eta <= 1.0)) errs.push_back("eta outside (0, 1]");
    if (m < 1) errs.push_back("m must be >= 1");
    return errs;
  }
};

// The epsilon budget.  Per the composition, total adversarial failure is
// eps_s + eps_h + eps_test; eps_ec is the target honest-failure probability
// of error correction; eps_prime is the extra smoothing of the
// strong-converse finite bound.
struct SecurityParams {
  double eps_s = 1e-9;
  double eps_h = 1e-9;
  double eps_prime = 1e-9;
  double eps_test = 1e-3;
  double eps_ec = 1e-2;

  double total_adversarial() const { return eps_s + eps_h + eps_test; }

  std::vector<std::string> validate() const {
    std::vector<std::string> errs;
    auto open01 = [&](double v, const char* name) {
      if (!(v > 0.0 && v < 1.0)) errs.push_back(std::string(name) + " outside (0, 1)");
    };
    open01(eps_s, "eps_s");
    open01(eps_h, "eps_h");
    open01(eps_prime, "eps_prime");
    open01(eps_test, "eps_test");
    open01(eps_ec, "eps_ec");
    return errs;
  }
};

struct RateResult {
  double bit_rate = 0.0;   // clamp(hmin_rate, 0, 1/2) - ec_rate; negative = insecure
  double hmin_rate = 0.0;  // raw min-entropy rate of the selected bound
  double ec_rate = 0.0;    // error-correction leakage per received photon
  BoundKind bound_used = BoundKind::Rational;
};

// Error-correcting information per channel use for trusted noise r: h((1+r)/2).
inline double ec_leak_rate(double r) {
  return binary_entropy((1.0 + r) / 2.0);
}

namespace detail {
inline double scenario_hmin(BoundKind bound, double r_storage, double nu) {
  switch (bound) {
    case BoundKind::Rational: return minentropy_rate_rational(r_storage, nu).bits_per_photon;
    case BoundKind::StrongConverse: return minentropy_rate_strong_converse(r_storage).bits_per_photon;
    case BoundKind::Collision: return minentropy_rate_collision(r_storage).bits_per_photon;
    default:
      throw std::invalid_argument(
          "scenario rates accept bounds rational, strong_converse, collision only");
  }
}
}  // namespace detail

// Scenario 1 (noisy measurement): bit rate min{1/2, hmin(r_dis)} - h((1+r1)/2),
// where the Rational kind already carries the storage rate nu.
inline RateResult rate_scenario1(double r_dis, double r1, BoundKind bound = BoundKind::Rational,
                                 double nu = 1.0) {
  r_dis = detail::checked(r_dis, 0.0, 1.0, "rate_scenario1: r_dis");
  r1 = detail::checked(r1, 0.0, 1.0, "rate_scenario1: r1");
  RateResult res;
  res.bound_used = bound;
  res.hmin_rate = detail::scenario_hmin(bound, r_dis, nu);
  res.ec_rate = ec_leak_rate(r1);
  res.bit_rate = std::min(0.5, std::max(0.0, res.hmin_rate)) - res.ec_rate;
  return res;
}

// Scenario 2 (noiseless measurement, storage noise r2 * r_mem): same formula
// with r_dis = r2 * r_mem and leakage h((1+r2)/2).
inline RateResult rate_scenario2(double r_mem, double r2, BoundKind bound = BoundKind::Rational,
                                 double nu = 1.0) {
  r_mem = detail::checked(r_mem, 0.0, 1.0, "rate_scenario2: r_mem");
  r2 = detail::checked(r2, 0.0, 1.0, "rate_scenario2: r2");
  return rate_scenario1(r2 * r_mem, r2, bound, nu);
}

// The unique r with h((1+r)/2) = 1/2: above this trusted-noise quality the
// error-correction leakage stays below the 1/2 min-entropy cap.
inline double threshold_trusted_noise() {
  return bisect_root([](double r) { return ec_leak_rate(r) - 0.5; }, 0.0, 1.0, 1e-10);
}

struct BoundaryPoint {
  double x = 0.0;                   // swept trusted parameter (or nu in the storage sweep)
  std::optional<double> boundary;   // memory parameter at zero bit rate; empty if never secure
};

// For each trusted-noise value on a uniform grid of [0, 1], the memory
// parameter (r_dis for scenario 1, r_mem for scenario 2) at which the bit
// rate crosses zero.  Boundary 1.0 means secure for every memory value;
// an empty entry means insecure even with fully decohering storage.
inline std::vector<BoundaryPoint> secure_boundary(int scenario, BoundKind bound, double nu,
                                                  int grid_points) {
  if (scenario != 1 && scenario != 2)
    throw std::invalid_argument("secure_boundary: scenario must be 1 or 2");
  if (grid_points < 2) throw std::invalid_argument("secure_boundary: grid must have >= 2 points");
  auto rate_at = [&](double trusted, double memory) {
    return scenario == 1 ? rate_scenario1(memory, trusted, bound, nu).bit_rate
                         : rate_scenario2(memory, trusted, bound, nu).bit_rate;
  };
  std::vector<BoundaryPoint> out;
  out.reserve(std::size_t(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    double trusted = double(i) / double(grid_points - 1);
    BoundaryPoint pt;
    pt.x = trusted;
    double at0 = rate_at(trusted, 0.0);
    if (at0 >= 0.0) {
      double at1 = rate_at(trusted, 1.0);
      if (at1 >= 0.0) {
        pt.boundary = 1.0;
      } else {
        pt.boundary = bisect_root([&](double mem) { return rate_at(trusted, mem); },
                                  0.0, 1.0, 1e-10);
      }
    }
    out.push_back(pt);
  }
  return out;
}

// Bounded-storage region sweep (r_mem = 1): for each storage rate nu on the
// grid, the minimal trusted noise r2 at which the Rational-bound scenario-2
// rate reaches zero.  As nu -> 0 the boundary tends to threshold_trusted_noise().
inline std::vector<BoundaryPoint> secure_boundary_storage(int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("secure_boundary_storage: grid must have >= 2 points");
  std::vector<BoundaryPoint> out;
  out.reserve(std::size_t(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    double nu = double(i) / double(grid_points - 1);
    auto rate = [&](double r2) { return rate_scenario2(1.0, r2, BoundKind::Rational, nu).bit_rate; };
    BoundaryPoint pt;
    pt.x = nu;
    // rate(0) = 1/2 - h(1/2) < 0 and rate(1) = (1-nu)/2 >= 0 with a single
    // sign change in between, so a bisection bracket always exists.
    pt.boundary = bisect_root(rate, 0.0, 1.0, 1e-10);
    out.push_back(pt);
  }
  return out;
}

// Extractable string length from the leftover hash lemma with the syndrome
// chain rule: max{0, floor(hmin - |Sigma| - 2 log2(1/eps_h) + 1)}.
inline std::int64_t ell_finite(double hmin_bits, std::int64_t syndrome_len_bits, double eps_h) {
  if (syndrome_len_bits < 0) throw std::domain_error("ell_finite: negative syndrome length");
  if (!(eps_h > 0.0 && eps_h <= 1.0)) throw std::domain_error("ell_finite: eps_h outside (0, 1]");
  double v = hmin_bits - double(syndrome_len_bits) - 2.0 * std::log2(1.0 / eps_h) + 1.0;
  if (v <= 0.0) return 0;
  return std::int64_t(std::floor(v));
}

}  // namespace otns
