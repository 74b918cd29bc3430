#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "octanorm/norm2d.hpp"

namespace octanorm {

/// Closed slice { x in B_N : f . x >= 1 - alpha } of a polygonal ball.
struct Slice2 {
  AbsNorm2 norm;
  Vec2 functional;
  double alpha = 0.0;
};

inline Slice2 make_slice(const AbsNorm2& n, Vec2 f, double alpha, const Tolerances& tol = {}) {
  if (!n.is_polygonal()) throw PreconditionError("slices need a polygonal norm");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  if (std::abs(dual_eval(n, {f.x, f.y}) - 1.0) > tol.sphere) throw PreconditionError("slice functional must have dual norm 1");
  return Slice2{n, f, alpha};
}

inline ConvexPolygon slice_polygon(const Slice2& s) {
  ConvexPolygon p = clip_halfplane(ball_polygon(s.norm.lowered()), s.functional, 1.0 - s.alpha);
  if (p.empty()) throw PreconditionError("slice is empty");
  return p;
}

/// sum_i lambda_i S_i as a polygon, by repeated Minkowski sums.
inline ConvexPolygon combo_polygon(const std::vector<Slice2>& slices, const std::vector<double>& lambdas) {
  if (slices.empty() || slices.size() != lambdas.size()) throw StructuralError("one weight per slice is required");
  double total = 0.0;
  for (double l : lambdas) {
    if (!(l > 0.0)) throw PreconditionError("combination weights must be positive");
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("combination weights must sum to 1");
  ConvexPolygon acc = slice_polygon(slices[0]).scaled(lambdas[0]);
  for (std::size_t i = 1; i < slices.size(); ++i) acc = minkowski_sum(acc, slice_polygon(slices[i]).scaled(lambdas[i]));
  return acc;
}

inline double diameter(const ConvexPolygon& p, const AbsNorm2& m) {
  const auto& v = p.vertices();
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, eval(m, v[i] - v[j]));
  return best;
}

/// Unit dual functionals (cos t, sin t) / N*(cos t, sin t), t = 2 pi j / grid.
inline std::vector<Vec2> dual_sphere_grid(const AbsNorm2& n, std::size_t grid) {
  std::vector<Vec2> fs;
  fs.reserve(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
    const Vec2 u{std::cos(t), std::sin(t)};
    fs.push_back((1.0 / dual_eval(n, {u.x, u.y})) * u);
  }
  return fs;
}

namespace detail {

template <class Visit>
void for_each_multiset(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, Visit&& visit) {
  if (cur.size() == k) {
    visit(cur);
    return;
  }
  for (std::size_t i = cur.empty() ? 0 : cur.back(); i < n; ++i) {
    cur.push_back(i);
    for_each_multiset(n, k, cur, visit);
    cur.pop_back();
  }
}

}  // namespace detail

struct ComboMinimum {
  double min_diameter = kInf;
  std::vector<Vec2> functionals;
  std::size_t combos = 0;
};

/// Smallest N-diameter among uniform combinations of 1..k grid slices.
/// The grid is a finite subset, so the result bounds the true infimum from
/// above. `visit` (optional) sees every combination and its diameter.
inline ComboMinimum min_combo_diameter(
    const AbsNorm2& n, std::size_t k, double alpha, std::size_t grid,
    const std::function<void(const std::vector<Vec2>&, double)>& visit = nullptr) {
  if (k < 1 || k > 3) throw DomainError("k must lie in {1, 2, 3}");
  if (grid < 1) throw DomainError("grid must be positive");
  const auto fs = dual_sphere_grid(n, grid);
  std::vector<ConvexPolygon> slices;
  slices.reserve(fs.size());
  for (const auto& f : fs) slices.push_back(slice_polygon(make_slice(n, f, alpha)));
  ComboMinimum r;
  for (std::size_t size = 1; size <= k; ++size) {
    const double lambda = 1.0 / static_cast<double>(size);
    std::vector<std::size_t> cur;
    detail::for_each_multiset(fs.size(), size, cur, [&](const std::vector<std::size_t>& idx) {
      ConvexPolygon acc = slices[idx[0]].scaled(lambda);
      for (std::size_t i = 1; i < idx.size(); ++i) acc = minkowski_sum(acc, slices[idx[i]].scaled(lambda));
      const double d = diameter(acc, n);
      ++r.combos;
      std::vector<Vec2> chosen;
      if (visit || d < r.min_diameter) {
        for (auto i : idx) chosen.push_back(fs[i]);
      }
      if (visit) visit(chosen, d);
      if (d < r.min_diameter) {
        r.min_diameter = d;
        r.functionals = std::move(chosen);
      }
    });
  }
  return r;
}

/// g1 - g2 for the face [g1, g2] of the dual ball exposed by w (zero where
/// N is smooth at w). tau(w, y) = |h . y| in the plane.
inline Vec2 tau_normal_2d(const AbsNorm2& n, Vec2 w) {
  if (!n.is_polygonal()) return {0.0, 0.0};
  const ConvexPolygon dual_ball = ball_polygon(n.lowered_dual());
  double best = -kInf;
  for (const auto& g : dual_ball.vertices()) best = std::max(best, dot(g, w));
  const double slack = 1e-12 * std::max(1.0, std::abs(best));
  std::vector<Vec2> face;
  for (const auto& g : dual_ball.vertices())
    if (dot(g, w) >= best - slack) face.push_back(g);
  if (face.size() < 2) return {0.0, 0.0};
  return face.front() - face.back();
}

/// Exact sup over unit directions y of sum_i lambda_i tau(w_i, y) in
/// (R^2, N). The objective is convex in y, so it peaks at a ball vertex.
inline double witness_sup_2d(const AbsNorm2& n, const std::vector<Vec2>& points, const std::vector<double>& weights = {}) {
  if (points.empty()) throw PreconditionError("witness set is empty");
  if (!n.is_polygonal()) return 0.0;
  std::vector<Vec2> hs;
  for (const auto& w : points) hs.push_back(tau_normal_2d(n, w));
  const ConvexPolygon ball = ball_polygon(n.lowered());
  double best = 0.0;
  for (const auto& v : ball.vertices()) {
    double s = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i)
      s += (weights.empty() ? 1.0 / static_cast<double>(hs.size()) : weights[i]) * std::abs(dot(hs[i], v));
    best = std::max(best, s);
  }
  return best;
}

struct Roughness2d {
  double lower = 0.0;  // trivially certified
  double upper = kInf;
  std::string upper_source;
  std::vector<Vec2> witness;
  std::vector<double> best_by_size;
};

/// Smallest exact witness sup over uniform multisets of 1..n_max sphere
/// points drawn from a grid of `grid` angles plus `budget` seeded random
/// angles. Only an upper bound on the infimum is produced.
inline Roughness2d roughness_2d(const AbsNorm2& n, std::size_t n_max, std::size_t budget, std::uint64_t seed,
                                std::size_t grid = 256) {
  if (n_max < 1 || n_max > 4) throw DomainError("n_max must lie in {1, 2, 3, 4}");
  std::vector<double> angles;
  for (std::size_t j = 0; j < grid; ++j)
    angles.push_back(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < budget; ++j) angles.push_back(angle(rng));

  // Witness values depend only on the face normals h, so candidates sharing
  // an h are interchangeable; keep the first of each class.
  std::vector<Vec2> points, normals;
  for (double t : angles) {
    const Vec2 u{std::cos(t), std::sin(t)};
    const Vec2 w = (1.0 / eval(n, u)) * u;
    const Vec2 h = tau_normal_2d(n, w);
    bool seen = false;
    for (const auto& g : normals) seen = seen || (std::abs(g.x - h.x) <= 1e-12 && std::abs(g.y - h.y) <= 1e-12);
    if (!seen) {
      points.push_back(w);
      normals.push_back(h);
    }
  }

  const std::vector<Vec2> ball = n.is_polygonal() ? ball_polygon(n.lowered()).vertices() : std::vector<Vec2>{};
  Roughness2d r;
  r.upper_source = "best witness found (grid + random)";
  for (std::size_t size = 1; size <= n_max; ++size) {
    double best_size = kInf;
    std::vector<std::size_t> best_idx;
    std::vector<std::size_t> cur;
    detail::for_each_multiset(points.size(), size, cur, [&](const std::vector<std::size_t>& idx) {
      double value = 0.0;
      for (const auto& v : ball) {
        double s = 0.0;
        for (auto i : idx) s += std::abs(dot(normals[i], v));
        value = std::max(value, s / static_cast<double>(size));
      }
      if (value < best_size) {
        best_size = value;
        best_idx = idx;
      }
    });
    r.best_by_size.push_back(best_size);
    if (best_size < r.upper) {
      r.upper = best_size;
      r.witness.clear();
      for (auto i : best_idx) r.witness.push_back(points[i]);
    }
  }
  return r;
}

struct DevilleReport {
  double slice_min = 0.0;
  double roughness_min = 0.0;
  double difference = 0.0;
  double tolerance = 0.05;
  ComboMinimum combo;
  Roughness2d roughness;

  bool passed() const { return difference <= tolerance; }
};

/// Matched-budget comparison of the smallest slice-combination diameter of
/// B_N with the smallest witness roughness of the dual plane. Both sides
/// are upper estimates of the respective infima, which coincide.
inline DevilleReport deville_check(const AbsNorm2& n, std::size_t k, double alpha, std::size_t grid = 256,
                                   std::size_t budget = 64, std::uint64_t seed = 0, double tolerance = 0.05) {
  if (!n.is_polygonal()) throw PreconditionError("deville_check needs a polygonal norm");
  DevilleReport r;
  r.tolerance = tolerance;
  r.combo = min_combo_diameter(n, k, alpha, grid);
  r.roughness = roughness_2d(AbsNorm2::dual_of(n), k, budget, seed, grid);
  r.slice_min = r.combo.min_diameter;
  r.roughness_min = r.roughness.upper;
  r.difference = std::abs(r.slice_min - r.roughness_min);
  return r;
}

}  // namespace octanorm
