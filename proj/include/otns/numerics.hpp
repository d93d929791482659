#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace otns {

inline constexpr double kLn2 = 0.6931471805599453;

// Root of f on [lo, hi] by bisection; requires sign(f(lo)) != sign(f(hi)).
// Stops when the bracket width falls below tol; returns the midpoint.
template <typename F>
double bisect_root(F&& f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect_root: no sign change on bracket");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
  }
  return 0.5 * (lo + hi);
}

// Like bisect_root but for a bracket whose endpoint signs are known without
// evaluating f there (useful when f is undefined at the endpoints).
template <typename F>
double bisect_root_open(F&& f, double lo, double hi, bool positive_at_lo, double tol = 1e-12) {
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == positive_at_lo) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Argmax of a unimodal f on [lo, hi] by golden-section search.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol = 1e-12) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;   // 1/phi
  static const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;  // 1/phi^2
  double h = hi - lo;
  if (h <= tol) return 0.5 * (lo + hi);
  double c = lo + invphi2 * h;
  double d = lo + invphi * h;
  double fc = f(c);
  double fd = f(d);
  while (h > tol) {
    if (fc >= fd) {
      hi = d; d = c; fd = fc;
      h = hi - lo;
      c = lo + invphi2 * h;
      fc = f(c);
    } else {
      lo = c; c = d; fc = fd;
      h = hi - lo;
      d = lo + invphi * h;
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace otns
