#pragma once

#include <cmath>
#include <utility>

namespace octanorm::numeric {

/// Largest x in [lo, hi] with pred(x) true, assuming pred is true on a
/// prefix [lo, x*] of the interval. Returns lo if pred(lo) is false.
template <class Pred>
double bisect_last_true(Pred&& pred, double lo, double hi, double width) {
  if (pred(hi)) return hi;
  if (!pred(lo)) return lo;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

struct Extremum {
  double x;
  double value;
};

/// Golden-section maximization of a unimodal (e.g. concave) function on
/// [lo, hi]. The endpoints are compared against the interior optimum so a
/// maximum sitting on the boundary is not lost.
template <class F>
Extremum golden_section_max(F&& f, double lo, double hi, double width) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double a0 = lo;
  const double b0 = hi;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  Extremum best{0.5 * (lo + hi), f(0.5 * (lo + hi))};
  for (double x : {a0, b0, c, d}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

}  // namespace octanorm::numeric
