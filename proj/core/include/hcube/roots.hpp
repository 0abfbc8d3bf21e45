#pragma once

// Bracketing scalar solvers shared by the special functions and the
// variational code. All of them only ever evaluate inside [lo, hi].

#include <cmath>

namespace hcube::roots {

/// Root of a function that changes sign on [lo, hi]. Stops when the bracket
/// is narrower than xtol or can no longer be split in floating point.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 0.0) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  const bool lo_negative = flo < 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || hi - lo <= xtol) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

/// Solve f(t) = target for increasing f on [lo, hi] with Newton steps that
/// fall back to bisection whenever they leave the current bracket.
template <class F, class DF>
double newton_increasing(F&& f, DF&& df, double target, double lo, double hi, double t) {
  for (int it = 0; it < 200; ++it) {
    const double r = f(t) - target;
    if (r == 0.0) return t;
    if (r < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = df(t);
    double next = (slope > 0.0 && std::isfinite(slope)) ? t - r / slope : lo + 0.5 * (hi - lo);
    if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
    if (std::fabs(next - t) <= 1e-16 * std::fabs(t) || next <= lo || next >= hi) return next;
    t = next;
  }
  return t;
}

struct Extremum {
  double arg;
  double value;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
template <class F>
Extremum golden_max(F&& f, double lo, double hi, double xtol = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (!(c < d)) break;
  }
  Extremum best{c, fc};
  if (fd > best.value) best = {d, fd};
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo > best.value) best = {lo, flo};
  if (fhi > best.value) best = {hi, fhi};
  return best;
}

}  // namespace hcube::roots
