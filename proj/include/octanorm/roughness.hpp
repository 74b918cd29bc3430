#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "octanorm/seqspace.hpp"

namespace octanorm {

/// Points of a space with optional convex weights (empty = uniform).
/// Points built by make_witness_set are unit vectors; the internal factor
/// problems also admit zero points, whose roughness quotient is 2.
struct WitnessSet {
  SpaceExpr space;
  std::vector<SpaceVec> points;
  std::vector<double> weights;

  double weight(std::size_t i) const { return weights.empty() ? 1.0 / points.size() : weights[i]; }
};

inline WitnessSet make_witness_set(SpaceExpr space, std::vector<SpaceVec> points, std::vector<double> weights = {},
                                   const Tolerances& tol = {}) {
  if (points.empty()) throw PreconditionError("witness set is empty");
  for (const auto& x : points) {
    if (std::abs(norm(space, x) - 1.0) > tol.sphere) throw PreconditionError("witness points must have norm 1");
  }
  if (!weights.empty()) {
    if (weights.size() != points.size()) throw StructuralError("one weight per witness point is required");
    double total = 0.0;
    for (double w : weights) {
      if (!(w > 0.0)) throw PreconditionError("witness weights must be positive");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("witness weights must sum to 1");
  }
  return WitnessSet{std::move(space), std::move(points), std::move(weights)};
}

/// Lower bound realized by an explicit unit direction, optionally paired
/// with an analytic upper bound.
struct RoughnessBracket {
  double lower = 0.0;
  SpaceVec lower_direction;
  std::optional<double> upper;
  std::string upper_source;
};

/// sum_i w_i tau(x_i, y/||y||).
inline double witness_value(const WitnessSet& w, const SpaceVec& y) {
  const double ny = norm(w.space, y);
  if (ny == 0.0) throw DomainError("witness_value needs a nonzero direction");
  const SpaceVec u = scaled(y, 1.0 / ny);
  double total = 0.0;
  if (w.weights.empty()) {
    for (const auto& x : w.points) total += tau(w.space, x, u);
    return total / static_cast<double>(w.points.size());
  }
  for (std::size_t i = 0; i < w.points.size(); ++i) total += w.weights[i] * tau(w.space, w.points[i], u);
  return total;
}

namespace detail {

inline std::size_t binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(std::llround(r));
}

template <class Visit>
void for_each_composition(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur, Visit&& visit) {
  if (cur.size() + 1 == parts) {
    std::size_t used = 0;
    for (auto c : cur) used += c;
    cur.push_back(total - used);
    visit(cur);
    cur.pop_back();
    return;
  }
  std::size_t used = 0;
  for (auto c : cur) used += c;
  for (std::size_t k = 0; k + used <= total; ++k) {
    cur.push_back(k);
    for_each_composition(total, parts, cur, visit);
    cur.pop_back();
  }
}

struct SearchState {
  const WitnessSet& w;
  SpaceVec best;
  double best_value = -1.0;

  bool offer(const SpaceVec& y) {
    if (y.is_zero()) return false;
    const double v = witness_value(w, y);
    if (v > best_value + 1e-12 || best_value < 0.0) {
      best_value = v;
      best = y;
      return true;
    }
    return false;
  }
};

}  // namespace detail

/// Seeded search for a unit direction with large weighted roughness
/// quotient. Candidates, in order: fresh-coordinate directions with all
/// leaf weight splits on a simplex grid of step 1/64 (coarsened when the
/// grid would exceed 50000 points), `budget` random sparse directions, then
/// coordinate ascent from the best one. Only strict improvements (> 1e-12)
/// replace the incumbent, so ties go to the earliest candidate.
inline RoughnessBracket direction_search(const WitnessSet& w, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw PreconditionError("direction_search budget must be at least 1");
  if (w.points.empty()) throw PreconditionError("witness set is empty");
  const std::size_t leaves = w.space.leaf_count();

  std::vector<std::size_t> fresh(leaves);
  std::vector<std::vector<std::size_t>> pool(leaves);
  for (std::size_t l = 0; l < leaves; ++l) {
    std::vector<SparseVec> col;
    std::set<std::size_t> idx;
    for (const auto& x : w.points) {
      col.push_back(x.leaves[l]);
      for (const auto& [i, v] : x.leaves[l].entries()) idx.insert(i);
    }
    fresh[l] = fresh_index(col);
    idx.insert(fresh[l]);
    pool[l].assign(idx.begin(), idx.end());
  }

  detail::SearchState st{w, zero_vec(w.space)};

  std::size_t grid = 64;
  while (grid > 1 && detail::binomial(grid + leaves - 1, leaves - 1) > 50000) grid /= 2;
  std::vector<std::size_t> cur;
  detail::for_each_composition(grid, leaves, cur, [&](const std::vector<std::size_t>& parts) {
    SpaceVec y = zero_vec(w.space);
    for (std::size_t l = 0; l < leaves; ++l)
      y.leaves[l].set(fresh[l], static_cast<double>(parts[l]) / static_cast<double>(grid));
    st.offer(y);
  });

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_int_distribution<int> count(0, 3);
  for (std::size_t r = 0; r < budget; ++r) {
    SpaceVec y = zero_vec(w.space);
    for (std::size_t l = 0; l < leaves; ++l) {
      const int k = count(rng);
      std::uniform_int_distribution<std::size_t> pick(0, pool[l].size() - 1);
      for (int j = 0; j < k; ++j) y.leaves[l].set(pool[l][pick(rng)], value(rng));
    }
    if (y.is_zero()) y.leaves[r % leaves].set(fresh[r % leaves], 1.0);
    st.offer(y);
  }

  for (double step = 0.5; step >= 1.0 / 64.0; step *= 0.5) {
    for (int pass = 0; pass < 4; ++pass) {
      bool improved = false;
      const double scale = norm(w.space, st.best);
      for (std::size_t l = 0; l < leaves; ++l) {
        for (std::size_t i : pool[l]) {
          for (double sign : {1.0, -1.0}) {
            SpaceVec y = st.best;
            y.leaves[l].set(i, y.leaves[l].get(i) + sign * step * scale);
            improved = st.offer(y) || improved;
          }
        }
      }
      if (!improved) break;
    }
  }

  RoughnessBracket r;
  r.lower_direction = scaled(st.best, 1.0 / norm(w.space, st.best));
  r.lower = witness_value(w, r.lower_direction);
  return r;
}

inline SpaceVec concat(const SpaceVec& a, const SpaceVec& b) {
  SpaceVec r = a;
  r.leaves.insert(r.leaves.end(), b.leaves.begin(), b.leaves.end());
  return r;
}

struct SumDirection {
  SpaceVec direction;
  double achieved = 0.0;
  double predicted = 0.0;
  double gamma = 0.0;
  std::optional<double> delta_x;
  std::optional<double> delta_y;
  double c = 0.0;
  double d = 0.0;
  std::string branch;
};

namespace detail {

/// Factor witness problem sum_i w_i tau(x_i, .), with nonzero points
/// normalized (tau is invariant under positive scaling of the base point)
/// and zero-weight points dropped.
inline WitnessSet factor_witness(const SpaceExpr& space, const std::vector<SpaceVec>& xs,
                                 const std::vector<double>& weights) {
  WitnessSet w{space, {}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    const double n = norm(space, xs[i]);
    w.points.push_back(n == 0.0 ? xs[i] : scaled(xs[i], 1.0 / n));
    w.weights.push_back(weights[i]);
  }
  return w;
}

}  // namespace detail

/// Direction in X (+)_N Y built from factor directions as in the absolute
/// sum roughness theorem. Pairs (x_i, y_i) must satisfy N(||x_i||, ||y_i||)
/// = 1. With norming functionals (c_i, d_i) and their means c, d, the factor
/// problems use weights c_i/(n c) and d_i/(n d); if c = 0 (or d = 0) only
/// the Y (or X) factor is searched and the other part of z is zero.
/// `predicted` is gamma * min(delta_x, delta_y) with gamma = 1/N(1,1),
/// restricted to the searched factor in the degenerate branches.
inline SumDirection theorem_sum_direction(const AbsNorm2& n, const SpaceExpr& x_space, const SpaceExpr& y_space,
                                          const std::vector<SpaceVec>& xs, const std::vector<SpaceVec>& ys,
                                          double eps, std::size_t budget, std::uint64_t seed,
                                          TieBreak tie = TieBreak::SmallestC, const Tolerances& tol = {}) {
  if (xs.size() != ys.size()) throw StructuralError("x and y witness lists differ in length");
  if (xs.empty()) throw PreconditionError("witness set is empty");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const std::size_t count = xs.size();
  const SpaceExpr z_space = SpaceExpr::sum(n, x_space, y_space);

  std::vector<double> cs(count), ds(count);
  std::vector<SpaceVec> zs;
  SumDirection r;
  for (std::size_t i = 0; i < count; ++i) {
    const Vec2 st{norm(x_space, xs[i]), norm(y_space, ys[i])};
    if (std::abs(eval(n, st) - 1.0) > tol.sphere) throw PreconditionError("paired points must have sum-norm 1");
    const Functional2 f = norming_functional(n, st, tie, tol);
    cs[i] = f.c;
    ds[i] = f.d;
    r.c += f.c;
    r.d += f.d;
    zs.push_back(concat(xs[i], ys[i]));
  }
  r.c /= static_cast<double>(count);
  r.d /= static_cast<double>(count);
  r.gamma = gamma_inf(n);

  SpaceVec x_dir = zero_vec(x_space);
  SpaceVec y_dir = zero_vec(y_space);
  if (r.c > 0.0) {
    std::vector<double> mu(count);
    for (std::size_t i = 0; i < count; ++i) mu[i] = cs[i] / (static_cast<double>(count) * r.c);
    const auto found = direction_search(detail::factor_witness(x_space, xs, mu), budget, seed);
    r.delta_x = found.lower;
    x_dir = scaled(found.lower_direction, eps);
  }
  if (r.d > 0.0) {
    std::vector<double> nu(count);
    for (std::size_t i = 0; i < count; ++i) nu[i] = ds[i] / (static_cast<double>(count) * r.d);
    const auto found = direction_search(detail::factor_witness(y_space, ys, nu), budget, seed);
    r.delta_y = found.lower;
    y_dir = scaled(found.lower_direction, eps);
  }
  if (r.delta_x && r.delta_y) {
    r.branch = "both";
    r.predicted = r.gamma * std::min(*r.delta_x, *r.delta_y);
  } else if (r.delta_y) {
    r.branch = "c=0";
    r.predicted = r.gamma * *r.delta_y;
  } else {
    r.branch = "d=0";
    r.predicted = r.gamma * *r.delta_x;
  }
  r.direction = concat(x_dir, y_dir);
  r.achieved = witness_value(WitnessSet{z_space, zs, {}}, r.direction);
  return r;
}

struct L1SumDirection {
  SpaceVec direction;
  double achieved = 0.0;
  double x_value = 0.0;
};

/// z = (x, 0) in X (+)_1 Y, with x from a direction search on the X-parts of
/// the pairs (uniform weights; zero X-parts contribute 2). The l1 sum passes
/// the X-side value through unchanged.
inline L1SumDirection l1_sum_direction(const SpaceExpr& x_space, const SpaceExpr& y_space,
                                       const std::vector<std::pair<SpaceVec, SpaceVec>>& paired, std::size_t budget,
                                       std::uint64_t seed, const Tolerances& tol = {}) {
  if (paired.empty()) throw PreconditionError("witness set is empty");
  const AbsNorm2 l1 = AbsNorm2::lp(1.0);
  const SpaceExpr z_space = SpaceExpr::sum(l1, x_space, y_space);
  std::vector<SpaceVec> xs, zs;
  for (const auto& [x, y] : paired) {
    const double nz = norm(x_space, x) + norm(y_space, y);
    if (std::abs(nz - 1.0) > tol.sphere) throw PreconditionError("paired points must have l1-sum norm 1");
    xs.push_back(x);
    zs.push_back(concat(x, y));
  }
  const std::vector<double> uniform(xs.size(), 1.0 / static_cast<double>(xs.size()));
  const auto found = direction_search(detail::factor_witness(x_space, xs, uniform), budget, seed);
  L1SumDirection r;
  r.x_value = found.lower;
  r.direction = concat(found.lower_direction, zero_vec(y_space));
  r.achieved = witness_value(WitnessSet{z_space, zs, {}}, r.direction);
  return r;
}

/// Error term f(eps) of the l_p-sum upper bound: (p-1)/2 eps + eps^(p-1)/p
/// for 1 < p <= 2 and (p-1) 2^(p-2-2/p) eps + eps^(p-1)/p for p > 2.
inline double f_eps(double p, double eps) {
  if (!(p > 1.0 && std::isfinite(p))) throw DomainError("f_eps: p must lie in (1, inf)");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("f_eps: eps must lie in (0, 1)");
  const double tail = std::pow(eps, p - 1.0) / p;
  if (p <= 2.0) return 0.5 * (p - 1.0) * eps + tail;
  return (p - 1.0) * std::pow(2.0, p - 2.0 - 2.0 / p) * eps + tail;
}

inline SpaceExpr l1_psum_model(double p) {
  return SpaceExpr::sum(AbsNorm2::lp(p), SpaceExpr::leaf(1.0), SpaceExpr::leaf(1.0));
}

struct UpperInequalityReport {
  double p = 0.0;
  double eps = 0.0;
  double coefficient = 0.0;  // 2^(1-1/p) + f(eps)
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_excess = -kInf;  // max of lhs - rhs

  bool passed() const { return violations == 0; }
};

/// Samples z with ||z|| = eps in l1 (+)_p l1 and checks
/// (1/2) sum_{i=1,2} (||z_i + z|| + ||z_i - z||) <= (2^(1-1/p) + f(eps)) ||z|| + 2
/// for z_1 = (e_0, 0), z_2 = (0, e_0), with slack 1e-12.
inline UpperInequalityReport check_upper_inequality(double p, double eps, std::size_t samples, std::uint64_t seed) {
  UpperInequalityReport r;
  r.p = p;
  r.eps = eps;
  r.coefficient = std::pow(2.0, 1.0 - 1.0 / p) + f_eps(p, eps);
  r.samples = samples;
  const SpaceExpr s = l1_psum_model(p);
  const SpaceVec z1{{SparseVec{{0, 1.0}}, SparseVec{}}};
  const SpaceVec z2{{SparseVec{}, SparseVec{{0, 1.0}}}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> mode(0, 3);
  for (std::size_t k = 0; k < samples; ++k) {
    SpaceVec z = zero_vec(s);
    const int m = mode(rng);
    while (z.is_zero()) {
      for (std::size_t l = 0; l < 2; ++l) {
        if ((m == 1 && l == 1) || (m == 2 && l == 0)) continue;
        for (std::size_t i = 0; i < 4; ++i)
          if (coin(rng)) z.leaves[l].set(i, value(rng));
      }
    }
    z = scaled(z, eps / norm(s, z));
    const double nz = norm(s, z);
    const double lhs =
        0.5 * (norm(s, axpy(z1, 1.0, z)) + norm(s, axpy(z1, -1.0, z)) + norm(s, axpy(z2, 1.0, z)) +
               norm(s, axpy(z2, -1.0, z)));
    const double rhs = r.coefficient * nz + 2.0;
    r.max_excess = std::max(r.max_excess, lhs - rhs);
    if (lhs - rhs > 1e-12) ++r.violations;
  }
  return r;
}

struct ExactDeltaReport {
  double p = 0.0;
  RoughnessBracket bracket;
  double width = 0.0;
  double tol = 0.0;

  bool passed() const { return width <= tol && bracket.lower <= *bracket.upper + 1e-12; }
};

/// Two-point witness {(e_0,0), (0,e_0)} in l1 (+)_p l1: searched lower bound
/// against the limiting upper bound 2^(1-1/p).
inline ExactDeltaReport exact_delta_report(double p, double tol, std::size_t budget = 200, std::uint64_t seed = 0) {
  if (!(p > 1.0 && std::isfinite(p))) throw DomainError("exact_delta_report: p must lie in (1, inf)");
  const SpaceExpr s = l1_psum_model(p);
  const WitnessSet w = make_witness_set(
      s, {SpaceVec{{SparseVec{{0, 1.0}}, SparseVec{}}}, SpaceVec{{SparseVec{}, SparseVec{{0, 1.0}}}}});
  ExactDeltaReport r;
  r.p = p;
  r.tol = tol;
  r.bracket = direction_search(w, budget, seed);
  r.bracket.upper = std::pow(2.0, 1.0 - 1.0 / p);
  r.bracket.upper_source = "l_p-sum upper bound 2^(1-1/p) + f(eps), eps -> 0";
  r.width = *r.bracket.upper - r.bracket.lower;
  return r;
}

}  // namespace octanorm
