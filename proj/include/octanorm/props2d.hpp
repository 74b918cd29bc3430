#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "octanorm/norm2d.hpp"

namespace octanorm {

enum class Property { PosOH, PosSD2P };
enum class Method { Exact, Numeric };

/// Outcome of a positive-octahedrality or positive-SD2P check.
///
/// For PosOH the witness is a positive sphere point (c, d) with
/// N((1,0)+(c,d)) = N((0,1)+(c,d)) = 2. For PosSD2P it is the pair (a, b)
/// with N(a,1) = N(1,b) = 1 whose midpoint ((1+a)/2, (1+b)/2) stays on the
/// sphere.
struct PropertyVerdict {
  Property property = Property::PosOH;
  bool verdict = false;
  std::optional<Vec2> witness;
  double residual = 0.0;
  Method method = Method::Exact;
};

namespace detail {

inline double eq2_value(double a, double b, double x, double y) {
  x = std::abs(x);
  y = std::abs(y);
  return std::max({x, y, ((1.0 - b) * x + (1.0 - a) * y) / (1.0 - a * b)});
}

inline double eq2_third_term(double a, double b, double x, double y) {
  return ((1.0 - b) * x + (1.0 - a) * y) / (1.0 - a * b);
}

inline void require_admissible(double a, double b) {
  if (!(a >= 0.0 && a < 1.0 && b >= 0.0 && b < 1.0)) throw DomainError("a, b must lie in [0, 1)");
  if (a == 0.0 && b == 0.0) throw PreconditionError("a = b = 0 is excluded (l_inf norm)");
}

}  // namespace detail

/// Polygon path: the face through (1,0) and the face through (0,1) meet
/// iff the first-quadrant chain has at most three vertices.
inline PropertyVerdict check_pos_oh_exact(const AbsNorm2& n) {
  const auto& v = n.lowered().vertices();
  PropertyVerdict r{Property::PosOH, false, std::nullopt, 0.0, Method::Exact};
  if (v.size() == 2) {
    r.verdict = true;
    r.witness = v.front();
  } else if (v.size() == 3) {
    r.verdict = true;
    r.witness = v[1];
  }
  return r;
}

/// Numeric path for any representation: minimize
/// max(2 - N((1,0)+p), 2 - N((0,1)+p)) over sphere points p = (a, u(a)).
inline PropertyVerdict check_pos_oh_numeric(const AbsNorm2& n, const Tolerances& tol = {}) {
  auto point = [&](double a) { return Vec2{a, upper_boundary_bisect(n, a, tol)}; };
  auto defect = [&](double a) {
    const Vec2 p = point(a);
    return std::max(2.0 - eval(n, {1.0 + p.x, p.y}), 2.0 - eval(n, {p.x, 1.0 + p.y}));
  };
  constexpr int kGrid = 1000;
  int best_k = 0;
  double best = defect(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    const double h = defect(static_cast<double>(k) / kGrid);
    if (h < best) {
      best = h;
      best_k = k;
    }
  }
  const double lo = std::max(0, best_k - 1) / static_cast<double>(kGrid);
  const double hi = std::min(kGrid, best_k + 1) / static_cast<double>(kGrid);
  const auto refined = numeric::golden_section_max([&](double a) { return -defect(a); }, lo, hi, tol.golden);
  double a_star = static_cast<double>(best_k) / kGrid;
  if (-refined.value < best) {
    best = -refined.value;
    a_star = refined.x;
  }
  PropertyVerdict r{Property::PosOH, false, std::nullopt, std::max(0.0, best), Method::Numeric};
  r.verdict = r.residual <= tol.verdict;
  if (r.verdict) r.witness = point(a_star);
  return r;
}

inline PropertyVerdict check_pos_oh(const AbsNorm2& n, const Tolerances& tol = {}) {
  return n.is_polygonal() ? check_pos_oh_exact(n) : check_pos_oh_numeric(n, tol);
}

/// Polygon path: with (1,B) the top of the vertical face at x = 1 and
/// (A,1) the right end of the horizontal face at y = 1, the property holds
/// iff the segment from (1,B) to (A,1) lies on the sphere, i.e. the two
/// points are equal or adjacent chain vertices.
inline PropertyVerdict check_pos_sd2p_exact(const AbsNorm2& n) {
  const auto& v = n.lowered().vertices();
  const std::size_t m = v.size();
  const std::size_t right = v[1].x == 1.0 ? 1 : 0;
  const std::size_t top = v[m - 2].y == 1.0 ? m - 2 : m - 1;
  PropertyVerdict r{Property::PosSD2P, false, std::nullopt, 0.0, Method::Exact};
  if (top <= right + 1) {
    r.verdict = true;
    r.witness = Vec2{v[top].x, v[right].y};
  }
  return r;
}

/// Numeric path: A = max{a : N(a,1) <= 1}, B = max{b : N(1,b) <= 1}; by
/// monotonicity the midpoint norm is largest at (A, B).
inline PropertyVerdict check_pos_sd2p_numeric(const AbsNorm2& n, const Tolerances& tol = {}) {
  const double a = right_boundary_bisect(n, 1.0, tol);
  const double b = upper_boundary_bisect(n, 1.0, tol);
  const double mid = eval(n, {0.5 * (1.0 + a), 0.5 * (1.0 + b)});
  const double residual =
      std::max({0.0, 1.0 - mid, std::abs(eval(n, {a, 1.0}) - 1.0), std::abs(eval(n, {1.0, b}) - 1.0)});
  PropertyVerdict r{Property::PosSD2P, residual <= tol.verdict, std::nullopt, residual, Method::Numeric};
  if (r.verdict) r.witness = Vec2{a, b};
  return r;
}

inline PropertyVerdict check_pos_sd2p(const AbsNorm2& n, const Tolerances& tol = {}) {
  return n.is_polygonal() ? check_pos_sd2p_exact(n) : check_pos_sd2p_numeric(n, tol);
}

struct DualityCheck {
  PropertyVerdict sd2p;     // of N
  PropertyVerdict dual_oh;  // of N*
  bool consistent = false;
  bool witness_norms_midpoint = false;

  bool ok() const { return consistent && witness_norms_midpoint; }
};

/// Positive SD2P of N against positive octahedrality of N*, including the
/// witness translation: the pos-OH witness (c,d) norms the SD2P midpoint.
inline DualityCheck check_duality(const AbsNorm2& n, const Tolerances& tol = {}) {
  DualityCheck r;
  r.sd2p = check_pos_sd2p(n, tol);
  const AbsNorm2 dual = AbsNorm2::dual_of(n);
  r.dual_oh = check_pos_oh(dual, tol);
  r.consistent = r.sd2p.verdict == r.dual_oh.verdict;
  r.witness_norms_midpoint = true;
  if (r.sd2p.verdict && r.dual_oh.verdict) {
    const Vec2 ab = *r.sd2p.witness;
    const Vec2 cd = *r.dual_oh.witness;
    const Vec2 mid{0.5 * (ab.x + 1.0), 0.5 * (1.0 + ab.y)};
    r.witness_norms_midpoint =
        std::abs(dot(cd, mid) - 1.0) <= tol.verdict && std::abs(eval(dual, cd) - 1.0) <= tol.verdict;
  }
  return r;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
};

/// Closed-form lambda window for the two-parameter family.
///
/// lo = a/(2+a-ab) and hi = (2-ab)/(2+b-ab) bound the lambdas at which the
/// third term of the max is the active one; t1 = a/(1+a), t2 = 1/(1+b)
/// bound the lambdas at which that term is strictly below 1 + N(l, 1-l).
/// `feasible` is [lo,hi] ∩ ((0,t1) ∪ (t2,1)). `positive` is the exact set
/// (0,t1) ∪ (t2,1) where the gap is strictly positive; it contains
/// `feasible` and also the lambdas below lo and above hi.
struct LambdaWindow {
  double lo = 0.0;
  double hi = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  std::vector<Interval> feasible;
  std::vector<Interval> positive;

  bool in_feasible(double l) const {
    return std::any_of(feasible.begin(), feasible.end(), [l](const Interval& i) { return i.contains(l); });
  }
  bool in_positive(double l) const {
    return std::any_of(positive.begin(), positive.end(), [l](const Interval& i) { return i.contains(l); });
  }
};

inline LambdaWindow lambda_window(double a, double b) {
  detail::require_admissible(a, b);
  LambdaWindow w;
  w.lo = a / (2.0 + a - a * b);
  w.hi = (2.0 - a * b) / (2.0 + b - a * b);
  w.t1 = a / (1.0 + a);
  w.t2 = 1.0 / (1.0 + b);
  const Interval left{w.lo, std::min(w.hi, w.t1), true, false};
  const Interval right{std::max(w.t2, w.lo), w.hi, false, true};
  if (!left.empty()) w.feasible.push_back(left);
  if (!right.empty()) w.feasible.push_back(right);
  if (w.t1 > 0.0) w.positive.push_back({0.0, w.t1, false, false});
  if (w.t2 < 1.0) w.positive.push_back({w.t2, 1.0, false, false});
  return w;
}

/// delta = 1 + N(l, 1-l) - N(2l + (1-l)a, 2(1-l) + lb).
inline double dsd2p_gap(double a, double b, double lambda) {
  detail::require_admissible(a, b);
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  const double c = 2.0 * lambda + (1.0 - lambda) * a;
  const double d = 2.0 * (1.0 - lambda) + lambda * b;
  return 1.0 + detail::eq2_value(a, b, lambda, 1.0 - lambda) - detail::eq2_value(a, b, c, d);
}

struct WindowVerification {
  double a = 0.0;
  double b = 0.0;
  std::size_t grid = 0;
  std::size_t checked = 0;
  std::size_t skipped_boundary = 0;
  std::size_t gap_mismatches = 0;         // sign(delta) > 0 vs lambda in `positive`
  std::size_t feasible_not_positive = 0;  // feasible lambda with delta <= 0
  std::size_t max_term_mismatches = 0;    // third term active vs lambda in [lo, hi]
  std::size_t strict_mismatches = 0;     // third term < 1 + N(l,1-l) vs lambda in `positive`

  std::size_t mismatches() const {
    return gap_mismatches + feasible_not_positive + max_term_mismatches + strict_mismatches;
  }
  bool passed() const { return mismatches() == 0; }
};

/// Scans lambda = j/grid, j = 1..grid-1, skipping points within two grid
/// steps of lo, hi, t1 or t2, and checks the closed forms against direct
/// evaluation. Gaps below 1e-12 count as zero.
inline WindowVerification verify_window(double a, double b, std::size_t grid) {
  constexpr double kZero = 1e-12;
  const LambdaWindow w = lambda_window(a, b);
  WindowVerification r;
  r.a = a;
  r.b = b;
  r.grid = grid;
  const double band = 2.0 / static_cast<double>(grid);
  for (std::size_t j = 1; j < grid; ++j) {
    const double l = static_cast<double>(j) / static_cast<double>(grid);
    const bool near_boundary = std::abs(l - w.lo) < band || std::abs(l - w.hi) < band ||
                               std::abs(l - w.t1) < band || std::abs(l - w.t2) < band;
    if (near_boundary) {
      ++r.skipped_boundary;
      continue;
    }
    ++r.checked;
    const double c = 2.0 * l + (1.0 - l) * a;
    const double d = 2.0 * (1.0 - l) + l * b;
    const double n_cd = detail::eq2_value(a, b, c, d);
    const double third = detail::eq2_third_term(a, b, c, d);
    const double rhs = 1.0 + detail::eq2_value(a, b, l, 1.0 - l);
    const bool positive = w.in_positive(l);
    const bool gap_positive = rhs - n_cd > kZero;
    if (gap_positive != positive) ++r.gap_mismatches;
    if (w.in_feasible(l) && !gap_positive) ++r.feasible_not_positive;
    const bool third_active = n_cd - third <= kZero;
    const bool in_window = l >= w.lo && l <= w.hi;
    if (third_active != in_window) ++r.max_term_mismatches;
    if ((rhs - third > kZero) != positive) ++r.strict_mismatches;
  }
  return r;
}

}  // namespace octanorm
