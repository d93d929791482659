#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "otns/numerics.hpp"

namespace otns {

inline double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

inline double log_binom_pmf(std::int64_t n, std::int64_t k, double p) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  return log_choose(n, k) + double(k) * std::log(p) + double(n - k) * std::log1p(-p);
}

namespace detail {
// Sum of Binomial(n, p) pmf over k in [k_lo, k_hi], accumulated in the log
// domain from the largest term outward for accuracy in the far tails.
inline double binom_range_prob(std::int64_t n, std::int64_t k_lo, std::int64_t k_hi, double p) {
  k_lo = std::max<std::int64_t>(k_lo, 0);
  k_hi = std::min(k_hi, n);
  if (k_lo > k_hi) return 0.0;
  std::int64_t mode = std::int64_t(std::floor(double(n + 1) * p));
  std::int64_t anchor = std::clamp(mode, k_lo, k_hi);
  double log_anchor = log_binom_pmf(n, anchor, p);
  if (log_anchor == -std::numeric_limits<double>::infinity()) {
    // Degenerate p handled exactly by the pmf.
    double total = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) total += std::exp(log_binom_pmf(n, k, p));
    return total;
  }
  // Relative pmf ratios: pmf(k+1)/pmf(k) = (n-k)/(k+1) * p/(1-p).
  const double odds = p / (1.0 - p);
  double sum = 1.0;
  double term = 1.0;
  for (std::int64_t k = anchor; k < k_hi; ++k) {
    term *= double(n - k) / double(k + 1) * odds;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  term = 1.0;
  for (std::int64_t k = anchor; k > k_lo; --k) {
    term *= double(k) / double(n - k + 1) / odds;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  double v = std::exp(log_anchor) * sum;
  return std::min(v, 1.0);
}
}  // namespace detail

// P[Bin(n, p) >= k]
inline double binom_upper_tail(std::int64_t n, std::int64_t k, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  if (double(k) > double(n) * p)
    return detail::binom_range_prob(n, k, n, p);
  return std::max(0.0, 1.0 - detail::binom_range_prob(n, 0, k - 1, p));
}

// P[Bin(n, p) <= k]
inline double binom_lower_tail(std::int64_t n, std::int64_t k, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  if (double(k) < double(n) * p)
    return detail::binom_range_prob(n, 0, k, p);
  return std::max(0.0, 1.0 - detail::binom_range_prob(n, k + 1, n, p));
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
// proportion.  Equal-tailed at level `confidence`.
inline Interval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                double confidence = 0.95) {
  if (trials <= 0) throw std::invalid_argument("clopper_pearson: trials must be positive");
  if (successes < 0 || successes > trials)
    throw std::invalid_argument("clopper_pearson: successes out of range");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("clopper_pearson: confidence out of (0,1)");
  const double alpha = 1.0 - confidence;
  Interval ci;
  if (successes == 0) {
    ci.lo = 0.0;
  } else {
    // Largest p with P[Bin >= successes] <= alpha/2; upper tail increases in p.
    ci.lo = bisect_root([&](double p) { return binom_upper_tail(trials, successes, p) - alpha / 2.0; },
                        0.0, 1.0, 1e-12);
  }
  if (successes == trials) {
    ci.hi = 1.0;
  } else {
    ci.hi = bisect_root([&](double p) { return binom_lower_tail(trials, successes, p) - alpha / 2.0; },
                        0.0, 1.0, 1e-12);
  }
  return ci;
}

// Pearson chi-square statistic; expected counts must be positive.
inline double chi_square_stat(const std::vector<double>& observed,
                              const std::vector<double>& expected) {
  if (observed.size() != expected.size())
    throw std::invalid_argument("chi_square_stat: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_stat: nonpositive expected count");
    double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

// Upper critical value of chi-square with dof degrees of freedom at tail
// probability alpha (Wilson-Hilferty approximation; adequate for test
// thresholds at the percent level).
inline double chi_square_critical(int dof, double alpha) {
  if (dof <= 0) throw std::invalid_argument("chi_square_critical: dof must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("chi_square_critical: alpha out of (0,1)");
  // Standard normal quantile via Acklam's rational approximation.
  auto norm_quantile = [](double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double q, r;
    if (p < plow) {
      q = std::sqrt(-2.0 * std::log(p));
      return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
      q = std::sqrt(-2.0 * std::log(1.0 - p));
      return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  };
  double z = norm_quantile(1.0 - alpha);
  double k = double(dof);
  double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

}  // namespace otns
