#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "octanorm/core.hpp"

namespace octanorm {

namespace detail {

inline constexpr double kSnap = 1e-12;

inline double snap01(double v) {
  if (std::abs(v) <= kSnap) return 0.0;
  if (std::abs(v - 1.0) <= kSnap) return 1.0;
  return v;
}

// Sine of the turn angle at b along a -> b -> c (positive for a left turn).
inline double turn(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 e1 = b - a;
  const Vec2 e2 = c - b;
  const double len = std::hypot(e1.x, e1.y) * std::hypot(e2.x, e2.y);
  return len == 0.0 ? 0.0 : cross(e1, e2) / len;
}

// Functional (c, d) of the line through p and q, normalized so that
// c*p.x + d*p.y == 1.
inline Functional2 supporting_line(Vec2 p, Vec2 q) {
  const Vec2 n{q.y - p.y, p.x - q.x};
  const double h = 0.5 * (dot(n, p) + dot(n, q));
  if (!(h > 0.0)) throw ValidationError("polygon edge does not separate the origin");
  return {n.x / h, n.y / h};
}

}  // namespace detail

/// First-quadrant boundary of the unit ball of an absolute normalized norm
/// whose ball is a polygon. Vertices run counterclockwise from (1,0) to
/// (0,1); x is non-increasing and y non-decreasing along the chain, and no
/// three consecutive vertices are collinear.
class Polygon2 {
 public:
  /// Validates and canonicalizes: coordinates within 1e-12 of 0 or 1 are
  /// snapped, duplicate and collinear vertices are dropped.
  static Polygon2 from_vertices(std::vector<Vec2> verts) {
    if (verts.size() < 2) throw ValidationError("polygon needs at least the vertices (1,0) and (0,1)");
    for (auto& v : verts) {
      require_finite(v, "polygon vertex");
      v = {detail::snap01(v.x), detail::snap01(v.y)};
      if (v.x < 0.0 || v.x > 1.0 || v.y < 0.0 || v.y > 1.0) {
        throw ValidationError("polygon vertex outside the unit square");
      }
    }
    if (!(verts.front() == Vec2{1.0, 0.0}) || !(verts.back() == Vec2{0.0, 1.0})) {
      throw ValidationError("polygon must start at (1,0) and end at (0,1)");
    }
    for (std::size_t i = 1; i < verts.size(); ++i) {
      if (verts[i].x > verts[i - 1].x || verts[i].y < verts[i - 1].y) {
        throw ValidationError("polygon vertices are not monotone (vertex " + std::to_string(i) + ")");
      }
    }

    std::vector<Vec2> out;
    out.reserve(verts.size());
    for (const auto& v : verts) {
      if (!out.empty() && std::abs(v.x - out.back().x) <= detail::kSnap &&
          std::abs(v.y - out.back().y) <= detail::kSnap) {
        continue;
      }
      out.push_back(v);
    }
    out.back() = {0.0, 1.0};
    if (out.size() < 2) throw ValidationError("degenerate polygon");

    bool changed = true;
    while (changed && out.size() > 2) {
      changed = false;
      for (std::size_t i = 1; i + 1 < out.size(); ++i) {
        const double t = detail::turn(out[i - 1], out[i], out[i + 1]);
        if (t < -detail::kSnap) throw ValidationError("polygon is not convex at vertex " + std::to_string(i));
        if (t <= detail::kSnap) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }

    Polygon2 poly;
    poly.verts_ = std::move(out);
    poly.edges_.reserve(poly.verts_.size() - 1);
    for (std::size_t i = 0; i + 1 < poly.verts_.size(); ++i) {
      poly.edges_.push_back(detail::supporting_line(poly.verts_[i], poly.verts_[i + 1]));
    }
    return poly;
  }

  const std::vector<Vec2>& vertices() const { return verts_; }

  /// Supporting functional of each edge, in chain order.
  const std::vector<Functional2>& edge_functionals() const { return edges_; }

  /// Gauge of the symmetric polygon; depends only on (|a|, |b|).
  double gauge(Vec2 v) const {
    const Vec2 u = abs(v);
    double best = 0.0;
    for (const auto& f : edges_) best = std::max(best, f(u));
    return best;
  }

  /// Support function max_{ball} (|c| x + |d| y): the dual norm.
  double support(Functional2 f) const {
    const Functional2 g{std::abs(f.c), std::abs(f.d)};
    double best = 0.0;
    for (const auto& v : verts_) best = std::max(best, g(v));
    return best;
  }

  /// max{ b >= 0 : gauge(a, b) <= 1 } for a in [0, 1].
  double upper_boundary(double a) const {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("upper_boundary: a must lie in [0,1]");
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < verts_.size(); ++i) {
      const Vec2 p = verts_[i];
      const Vec2 q = verts_[i + 1];
      if (a > p.x || a < q.x) continue;
      if (p.x == q.x) {
        best = std::max(best, q.y);
      } else {
        best = std::max(best, p.y + (a - p.x) * (q.y - p.y) / (q.x - p.x));
      }
    }
    return best;
  }

  /// The same ball with coordinates exchanged.
  Polygon2 swapped() const {
    std::vector<Vec2> v;
    v.reserve(verts_.size());
    for (auto it = verts_.rbegin(); it != verts_.rend(); ++it) v.push_back({it->y, it->x});
    return from_vertices(std::move(v));
  }

  bool approx_equal(const Polygon2& other, double tol) const {
    if (verts_.size() != other.verts_.size()) return false;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (std::abs(verts_[i].x - other.verts_[i].x) > tol || std::abs(verts_[i].y - other.verts_[i].y) > tol) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const Polygon2& l, const Polygon2& r) { return l.verts_ == r.verts_; }

 private:
  Polygon2() = default;

  std::vector<Vec2> verts_;
  std::vector<Functional2> edges_;
};

/// First quadrant of the dual ball: primal edges become dual vertices.
inline Polygon2 polygon_polar(const Polygon2& poly) {
  std::vector<Vec2> dual;
  dual.reserve(poly.edge_functionals().size() + 2);
  dual.push_back({1.0, 0.0});
  for (const auto& f : poly.edge_functionals()) dual.push_back(f.as_vec());
  dual.push_back({0.0, 1.0});
  return Polygon2::from_vertices(std::move(dual));
}

/// Closed convex polygon in the whole plane, counterclockwise, starting at
/// the lowest (then leftmost) vertex. May degenerate to a segment or point.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Convex hull (Andrew's monotone chain); collinear points are dropped.
  static ConvexPolygon hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
                return std::abs(a.x - b.x) <= kMerge && std::abs(a.y - b.y) <= kMerge;
              }),
              pts.end());
    ConvexPolygon out;
    if (pts.size() <= 1) {
      out.verts_ = std::move(pts);
      return out;
    }
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    auto left = [](Vec2 o, Vec2 a, Vec2 b) {
      const Vec2 u = a - o;
      const Vec2 w = b - o;
      return cross(u, w) > kMerge * std::hypot(u.x, u.y) * std::hypot(w.x, w.y);
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && !left(h[k - 2], h[k - 1], pts[i])) --k;
      h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
      while (k >= t && !left(h[k - 2], h[k - 1], pts[i - 1])) --k;
      h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    out.verts_ = std::move(h);
    out.rotate_to_lowest();
    return out;
  }

  const std::vector<Vec2>& vertices() const { return verts_; }
  bool empty() const { return verts_.empty(); }
  std::size_t size() const { return verts_.size(); }

  ConvexPolygon scaled(double s) const {
    ConvexPolygon out;
    out.verts_.reserve(verts_.size());
    for (const auto& v : verts_) out.verts_.push_back(s * v);
    if (s < 0) out.rotate_to_lowest();
    return out;
  }

  bool contains(Vec2 p, double tol) const {
    const std::size_t n = verts_.size();
    if (n == 0) return false;
    if (n == 1) return std::hypot(p.x - verts_[0].x, p.y - verts_[0].y) <= tol;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = verts_[i];
      const Vec2 b = verts_[(i + 1) % n];
      const Vec2 e = b - a;
      const double len = std::hypot(e.x, e.y);
      if (cross(e, p - a) < -tol * len) return false;
    }
    return true;
  }

  double area() const {
    double s = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) s += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
    return 0.5 * s;
  }

 private:
  static constexpr double kMerge = 1e-12;

  void rotate_to_lowest() {
    if (verts_.empty()) return;
    auto lowest = std::min_element(verts_.begin(), verts_.end(), [](Vec2 a, Vec2 b) {
      return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
    std::rotate(verts_.begin(), lowest, verts_.end());
  }

  std::vector<Vec2> verts_;
};

/// The full symmetric ball generated by a first-quadrant chain.
inline ConvexPolygon ball_polygon(const Polygon2& chain) {
  std::vector<Vec2> pts;
  pts.reserve(4 * chain.vertices().size());
  for (const auto& v : chain.vertices()) {
    pts.push_back({v.x, v.y});
    pts.push_back({-v.x, v.y});
    pts.push_back({-v.x, -v.y});
    pts.push_back({v.x, -v.y});
  }
  return ConvexPolygon::hull(std::move(pts));
}

/// Intersection with the closed half-plane { x : f . x >= offset }.
inline ConvexPolygon clip_halfplane(const ConvexPolygon& poly, Vec2 f, double offset) {
  const auto& v = poly.vertices();
  std::vector<Vec2> out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % n];
    const double da = dot(f, a) - offset;
    const double db = dot(f, b) - offset;
    if (da >= 0) out.push_back(a);
    if ((da >= 0) != (db >= 0) && n > 1) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return ConvexPolygon::hull(std::move(out));
}

/// Minkowski sum by merging the edge sequences of the two polygons in
/// polar-angle order.
inline ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) return {};
  const auto& p = a.vertices();
  const auto& q = b.vertices();
  if (p.size() < 3 || q.size() < 3) {
    std::vector<Vec2> pts;
    pts.reserve(p.size() * q.size());
    for (const auto& u : p) {
      for (const auto& w : q) pts.push_back(u + w);
    }
    return ConvexPolygon::hull(std::move(pts));
  }
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  std::vector<Vec2> out;
  out.reserve(n + m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    out.push_back(p[i % n] + q[j % m]);
    const Vec2 ep = p[(i + 1) % n] - p[i % n];
    const Vec2 eq = q[(j + 1) % m] - q[j % m];
    const double c = cross(ep, eq);
    if (j >= m || (i < n && c > 0)) {
      ++i;
    } else if (i >= n || c < 0) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return ConvexPolygon::hull(std::move(out));
}

}  // namespace octanorm
