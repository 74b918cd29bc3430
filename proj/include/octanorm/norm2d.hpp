#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <variant>
#include <vector>

#include "octanorm/core.hpp"
#include "octanorm/numeric.hpp"
#include "octanorm/polygon.hpp"

namespace octanorm {

enum class NormKind { Lp, ParamAB, Polygon, DualOf };

/// Absolute normalized norm on R^2.
///
/// Four representations are accepted: the l_p norms (p in [1, inf]), the
/// two-parameter family max{|c|, |d|, ((1-b)|c| + (1-a)|d|) / (1-ab)}, an
/// explicit polygonal ball, and the dual of another norm. Every norm lowers
/// to one of two kernels: a polygon (exact geometry) or a smooth l_p norm
/// with 1 < p < inf. Duals are resolved at construction, so the dual of a
/// polygon is its polar polygon and the dual of l_p is l_q.
namespace detail {
struct NormRep;
}

class AbsNorm2 {
 public:
  static AbsNorm2 lp(double p);
  static AbsNorm2 param_ab(double a, double b);
  static AbsNorm2 polygon(Polygon2 poly);
  static AbsNorm2 dual_of(const AbsNorm2& base);

  NormKind kind() const;
  double p() const;
  double a() const;
  double b() const;
  const Polygon2& polygon_rep() const;
  const AbsNorm2& base() const;

  bool is_polygonal() const;
  /// Polygon kernel; throws PreconditionError for smooth norms.
  const Polygon2& lowered() const;
  /// First quadrant of the dual ball of the polygon kernel.
  const Polygon2& lowered_dual() const;
  /// Exponent of the smooth kernel; throws PreconditionError for polygons.
  double smooth_exponent() const;

 private:
  using Rep = detail::NormRep;
  explicit AbsNorm2(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct detail::NormRep {
  struct Lp {
    double p;
  };
  struct AB {
    double a;
    double b;
  };
  struct Poly {
    Polygon2 poly;
  };
  struct Dual {
    AbsNorm2 base;
  };
  struct Kernel {
    double smooth_p = 0.0;  // 0 when polygonal
    std::shared_ptr<const Polygon2> chain;
    std::shared_ptr<const Polygon2> dual_chain;
  };

  std::variant<Lp, AB, Poly, Dual> rep;
  Kernel kernel;
};

namespace detail {

inline NormRep::Kernel polygon_kernel(Polygon2 chain) {
  NormRep::Kernel k;
  k.dual_chain = std::make_shared<const Polygon2>(polygon_polar(chain));
  k.chain = std::make_shared<const Polygon2>(std::move(chain));
  return k;
}

inline Polygon2 param_ab_chain(double a, double b) {
  std::vector<Vec2> v{{1.0, 0.0}};
  if (b > 0.0) v.push_back({1.0, b});
  if (a > 0.0) v.push_back({a, 1.0});
  v.push_back({0.0, 1.0});
  return Polygon2::from_vertices(std::move(v));
}

inline double dual_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

inline double lp_value(double p, Vec2 v) {
  const double x = std::abs(v.x);
  const double y = std::abs(v.y);
  if (p == 1.0) return x + y;
  if (std::isinf(p)) return std::max(x, y);
  if (p == 2.0) return std::hypot(x, y);
  const double m = std::max(x, y);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(x / m, p) + std::pow(y / m, p), 1.0 / p);
}

}  // namespace detail

inline AbsNorm2 AbsNorm2::lp(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("l_p norm requires p in [1, inf]");
  Rep rep{Rep::Lp{p}, {}};
  if (p == 1.0) {
    rep.kernel = detail::polygon_kernel(Polygon2::from_vertices({{1.0, 0.0}, {0.0, 1.0}}));
  } else if (std::isinf(p)) {
    rep.kernel = detail::polygon_kernel(Polygon2::from_vertices({{1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}));
  } else {
    rep.kernel.smooth_p = p;
  }
  return AbsNorm2(std::make_shared<const Rep>(std::move(rep)));
}

inline AbsNorm2 AbsNorm2::param_ab(double a, double b) {
  if (!(a >= 0.0 && a < 1.0 && b >= 0.0 && b < 1.0)) {
    throw DomainError("ab norm requires a, b in [0, 1)");
  }
  if (a == 0.0 && b == 0.0) {
    throw PreconditionError("ab norm with a = b = 0 is the l_inf norm; use lp:inf");
  }
  Rep rep{Rep::AB{a, b}, detail::polygon_kernel(detail::param_ab_chain(a, b))};
  return AbsNorm2(std::make_shared<const Rep>(std::move(rep)));
}

inline AbsNorm2 AbsNorm2::polygon(Polygon2 poly) {
  Rep rep{Rep::Poly{poly}, detail::polygon_kernel(poly)};
  return AbsNorm2(std::make_shared<const Rep>(std::move(rep)));
}

inline AbsNorm2 AbsNorm2::dual_of(const AbsNorm2& base) {
  Rep rep{Rep::Dual{base}, {}};
  if (base.is_polygonal()) {
    rep.kernel.chain = base.rep_->kernel.dual_chain;
    rep.kernel.dual_chain = base.rep_->kernel.chain;
  } else {
    rep.kernel.smooth_p = detail::dual_exponent(base.smooth_exponent());
  }
  return AbsNorm2(std::make_shared<const Rep>(std::move(rep)));
}

inline NormKind AbsNorm2::kind() const { return static_cast<NormKind>(rep_->rep.index()); }

inline double AbsNorm2::p() const {
  if (auto* v = std::get_if<Rep::Lp>(&rep_->rep)) return v->p;
  throw PreconditionError("not an l_p norm");
}
inline double AbsNorm2::a() const {
  if (auto* v = std::get_if<Rep::AB>(&rep_->rep)) return v->a;
  throw PreconditionError("not an ab norm");
}
inline double AbsNorm2::b() const {
  if (auto* v = std::get_if<Rep::AB>(&rep_->rep)) return v->b;
  throw PreconditionError("not an ab norm");
}
inline const Polygon2& AbsNorm2::polygon_rep() const {
  if (auto* v = std::get_if<Rep::Poly>(&rep_->rep)) return v->poly;
  throw PreconditionError("not a polygon norm");
}
inline const AbsNorm2& AbsNorm2::base() const {
  if (auto* v = std::get_if<Rep::Dual>(&rep_->rep)) return v->base;
  throw PreconditionError("not a dual norm");
}
inline bool AbsNorm2::is_polygonal() const { return rep_->kernel.chain != nullptr; }
inline const Polygon2& AbsNorm2::lowered() const {
  if (!is_polygonal()) throw PreconditionError("norm has no polygonal lowering");
  return *rep_->kernel.chain;
}
inline const Polygon2& AbsNorm2::lowered_dual() const {
  if (!is_polygonal()) throw PreconditionError("norm has no polygonal lowering");
  return *rep_->kernel.dual_chain;
}
inline double AbsNorm2::smooth_exponent() const {
  if (is_polygonal()) throw PreconditionError("norm is polygonal");
  return rep_->kernel.smooth_p;
}

inline double dual_eval(const AbsNorm2& n, Functional2 f);

/// N(v), by the formula of the norm's own representation.
inline double eval(const AbsNorm2& n, Vec2 v) {
  require_finite(v, "eval");
  switch (n.kind()) {
    case NormKind::Lp:
      return detail::lp_value(n.p(), v);
    case NormKind::ParamAB: {
      const double x = std::abs(v.x);
      const double y = std::abs(v.y);
      const double a = n.a();
      const double b = n.b();
      return std::max({x, y, ((1.0 - b) * x + (1.0 - a) * y) / (1.0 - a * b)});
    }
    case NormKind::Polygon:
      return n.polygon_rep().gauge(v);
    case NormKind::DualOf:
      return dual_eval(n.base(), {v.x, v.y});
  }
  return 0.0;
}

/// N*(c, d) = max over the unit ball of |a c| + |b d|.
inline double dual_eval(const AbsNorm2& n, Functional2 f) {
  require_finite(f.as_vec(), "dual_eval");
  if (n.kind() == NormKind::DualOf) return eval(n.base(), f.as_vec());
  if (n.is_polygonal()) return n.lowered().support(f);
  return detail::lp_value(detail::dual_exponent(n.smooth_exponent()), f.as_vec());
}

/// max{ b >= 0 : N(a, b) <= 1 }; exact on both kernels.
inline double upper_boundary(const AbsNorm2& n, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("upper_boundary: a must lie in [0,1]");
  if (n.is_polygonal()) return n.lowered().upper_boundary(a);
  const double p = n.smooth_exponent();
  return std::pow(std::max(0.0, 1.0 - std::pow(a, p)), 1.0 / p);
}

/// Same quantity found by bisection on eval; valid for any representation
/// because N is monotone in |b|.
inline double upper_boundary_bisect(const AbsNorm2& n, double a, const Tolerances& tol = {}) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("upper_boundary: a must lie in [0,1]");
  return numeric::bisect_last_true([&](double b) { return eval(n, {a, b}) <= 1.0; }, 0.0, 1.0, tol.bisection);
}

/// max{ a >= 0 : N(a, b) <= 1 }, by bisection.
inline double right_boundary_bisect(const AbsNorm2& n, double b, const Tolerances& tol = {}) {
  if (!(b >= 0.0 && b <= 1.0)) throw DomainError("right_boundary: b must lie in [0,1]");
  return numeric::bisect_last_true([&](double a) { return eval(n, {a, b}) <= 1.0; }, 0.0, 1.0, tol.bisection);
}

/// N*(c, d) as the maximum of the concave map a -> a|c| + u(a)|d| over
/// [0, 1], u being the bisected upper boundary. Independent of the
/// polygon and closed-form shortcuts.
inline double dual_eval_golden(const AbsNorm2& n, Functional2 f, const Tolerances& tol = {}) {
  const double c = std::abs(f.c);
  const double d = std::abs(f.d);
  auto value = [&](double a) { return a * c + upper_boundary_bisect(n, a, tol) * d; };
  return numeric::golden_section_max(value, 0.0, 1.0, tol.golden).value;
}

enum class TieBreak { SmallestC, LargestC };

/// Extreme points of { (c,d) >= 0 : N*(c,d) = 1, c v1 + d v2 = N(v) },
/// sorted lexicographically. One element at smooth points, two at corners.
inline std::vector<Functional2> subdiff2(const AbsNorm2& n, Vec2 v) {
  require_finite(v, "subdiff2");
  if (v.x < 0.0 || v.y < 0.0) throw PreconditionError("subdiff2 requires a non-negative point");
  if (v.x == 0.0 && v.y == 0.0) throw PreconditionError("subdiff2 is undefined at the origin");
  if (!n.is_polygonal()) {
    const double p = n.smooth_exponent();
    const double s = eval(n, v);
    return {{std::pow(v.x / s, p - 1.0), std::pow(v.y / s, p - 1.0)}};
  }
  const auto& dual = n.lowered_dual().vertices();
  double best = 0.0;
  for (const auto& f : dual) best = std::max(best, dot(f, v));
  const double slack = 1e-12 * std::max(1.0, best);
  std::vector<Functional2> hits;
  for (const auto& f : dual) {
    if (dot(f, v) >= best - slack) hits.push_back({f.x, f.y});
  }
  // Consecutive along the dual chain; a face has at most two extreme points.
  if (hits.size() > 2) hits = {hits.front(), hits.back()};
  std::sort(hits.begin(), hits.end());
  return hits;
}

/// A positive functional with N*(f) = 1 and f(v) = 1 for a positive unit v.
inline Functional2 norming_functional(const AbsNorm2& n, Vec2 v, TieBreak tie = TieBreak::SmallestC,
                                      const Tolerances& tol = {}) {
  if (v.x < 0.0 || v.y < 0.0) throw PreconditionError("norming_functional requires a positive point");
  const double value = eval(n, v);
  if (std::abs(value - 1.0) > tol.sphere) throw PreconditionError("norming_functional requires N(v) = 1");
  const auto ext = subdiff2(n, v);
  return tie == TieBreak::SmallestC ? ext.front() : ext.back();
}

/// True iff (1,0) is an extreme point of the ball, i.e. N(1,b) > 1 for b > 0.
inline bool is_e1_extreme(const AbsNorm2& n) {
  if (!n.is_polygonal()) return true;
  return n.lowered().vertices()[1].x < 1.0;
}

/// Largest gamma in (0,1] such that N(a,b) <= 1 and a > 1 - gamma force
/// |b| < eps. Computed as 1 - sup{ a : u(a) >= eps } by bisection.
inline double exposedness_modulus(const AbsNorm2& n, double eps, const Tolerances& tol = {}) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("exposedness_modulus: eps must lie in (0,1]");
  if (!is_e1_extreme(n)) throw PreconditionError("(1,0) is not an extreme point of the unit ball");
  const double a_star =
      numeric::bisect_last_true([&](double a) { return upper_boundary(n, a) >= eps; }, 0.0, 1.0, tol.bisection);
  return 1.0 - a_star;
}

/// Largest gamma with ||.||_inf >= gamma N(.), namely 1 / N(1,1).
inline double gamma_inf(const AbsNorm2& n) { return 1.0 / eval(n, {1.0, 1.0}); }

struct NormValidation {
  std::size_t samples = 0;
  double normalization = 0.0;
  double absoluteness = 0.0;
  double monotonicity = 0.0;
  double triangle = 0.0;
  double sandwich_lower = 0.0;  // max of ||v||_inf - N(v)
  double sandwich_upper = 0.0;  // max of N(v) - ||v||_1
  double tolerance = 0.0;

  double worst() const {
    return std::max({normalization, absoluteness, monotonicity, triangle, sandwich_lower, sandwich_upper});
  }
  bool passed() const { return worst() <= tolerance; }
};

/// Randomized property check of the defining properties of an absolute
/// normalized norm. Violations are reported, not thrown.
inline NormValidation validate(const AbsNorm2& n, std::size_t samples, std::uint64_t seed,
                               const Tolerances& tol = {}) {
  NormValidation r;
  r.samples = samples;
  r.tolerance = tol.sphere;
  r.normalization = std::max(std::abs(eval(n, {1.0, 0.0}) - 1.0), std::abs(eval(n, {0.0, 1.0}) - 1.0));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> shrink(0.0, 1.0);
  auto bump = [](double& slot, double v) { slot = std::max(slot, v); };
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec2 u{coord(rng), coord(rng)};
    const Vec2 w{coord(rng), coord(rng)};
    const double nu = eval(n, u);
    const double nw = eval(n, w);
    bump(r.absoluteness, std::abs(eval(n, {-u.x, u.y}) - nu));
    bump(r.absoluteness, std::abs(eval(n, {u.x, -u.y}) - nu));
    bump(r.absoluteness, std::abs(eval(n, {-u.x, -u.y}) - nu));
    const Vec2 smaller{u.x * shrink(rng), u.y * shrink(rng)};
    bump(r.monotonicity, eval(n, smaller) - nu);
    bump(r.triangle, eval(n, u + w) - nu - nw);
    bump(r.sandwich_lower, std::max(std::abs(u.x), std::abs(u.y)) - nu);
    bump(r.sandwich_upper, nu - (std::abs(u.x) + std::abs(u.y)));
  }
  return r;
}

}  // namespace octanorm
