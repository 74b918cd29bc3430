#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "octanorm/norm2d.hpp"

namespace octanorm {

/// Finitely supported real sequence; zero entries are never stored.
class SparseVec {
 public:
  using Map = std::map<std::size_t, double>;

  SparseVec() = default;
  SparseVec(std::initializer_list<std::pair<const std::size_t, double>> init) {
    for (const auto& [i, v] : init) set(i, v);
  }

  double get(std::size_t i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? 0.0 : it->second;
  }
  void set(std::size_t i, double v) {
    if (!std::isfinite(v)) throw DomainError("SparseVec entries must be finite");
    if (v == 0.0)
      entries_.erase(i);
    else
      entries_[i] = v;
  }
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  bool operator==(const SparseVec&) const = default;

 private:
  Map entries_;
};

/// x + t y
inline SparseVec axpy(const SparseVec& x, double t, const SparseVec& y) {
  SparseVec r = x;
  for (const auto& [i, v] : y.entries()) r.set(i, x.get(i) + t * v);
  return r;
}

inline SparseVec scaled(const SparseVec& x, double s) {
  SparseVec r;
  for (const auto& [i, v] : x.entries()) r.set(i, s * v);
  return r;
}

inline double lp_norm(const SparseVec& x, double p) {
  double m = 0.0;
  for (const auto& [i, v] : x.entries()) m = std::max(m, std::abs(v));
  if (m == 0.0 || std::isinf(p)) return m;
  double s = 0.0;
  if (p == 1.0) {
    for (const auto& [i, v] : x.entries()) s += std::abs(v);
    return s;
  }
  for (const auto& [i, v] : x.entries()) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

inline std::size_t fresh_index(const std::vector<SparseVec>& vs) {
  std::set<std::size_t> used;
  for (const auto& v : vs)
    for (const auto& [i, x] : v.entries()) used.insert(i);
  std::size_t k = 0;
  for (std::size_t i : used) {
    if (i != k) break;
    ++k;
  }
  return k;
}

inline std::size_t fresh_index(const SparseVec& v) { return fresh_index(std::vector<SparseVec>{v}); }

/// Leaf(p) = l_p on finitely supported sequences; Sum(N, L, R) = L (+)_N R.
class SpaceExpr {
 public:
  static SpaceExpr leaf(double p);
  static SpaceExpr sum(AbsNorm2 n, SpaceExpr left, SpaceExpr right);

  bool is_leaf() const;
  double p() const;
  const AbsNorm2& norm() const;
  const SpaceExpr& left() const;
  const SpaceExpr& right() const;
  std::size_t leaf_count() const;

 private:
  struct Node;
  SpaceExpr() = default;
  std::shared_ptr<const Node> node_;
};

struct SpaceExpr::Node {
  double p = 0.0;
  std::optional<AbsNorm2> norm;
  std::vector<SpaceExpr> children;
  std::size_t leaves = 1;
};

inline bool SpaceExpr::is_leaf() const { return !node_->norm.has_value(); }
inline double SpaceExpr::p() const { return node_->p; }
inline const AbsNorm2& SpaceExpr::norm() const { return *node_->norm; }
inline const SpaceExpr& SpaceExpr::left() const { return node_->children[0]; }
inline const SpaceExpr& SpaceExpr::right() const { return node_->children[1]; }
inline std::size_t SpaceExpr::leaf_count() const { return node_->leaves; }

inline SpaceExpr SpaceExpr::leaf(double p) {
  if (!(p >= 1.0)) throw DomainError("leaf exponent must lie in [1, inf]");
  SpaceExpr s;
  s.node_ = std::make_shared<const Node>(Node{p, std::nullopt, {}, 1});
  return s;
}

inline SpaceExpr SpaceExpr::sum(AbsNorm2 n, SpaceExpr left, SpaceExpr right) {
  SpaceExpr s;
  const std::size_t count = left.leaf_count() + right.leaf_count();
  s.node_ = std::make_shared<const Node>(Node{0.0, std::move(n), {std::move(left), std::move(right)}, count});
  return s;
}

/// A vector of a SpaceExpr, stored as its leaf components in left-to-right
/// leaf order.
struct SpaceVec {
  std::vector<SparseVec> leaves;

  bool operator==(const SpaceVec&) const = default;
  bool is_zero() const {
    return std::all_of(leaves.begin(), leaves.end(), [](const SparseVec& v) { return v.empty(); });
  }
};

inline SpaceVec axpy(const SpaceVec& x, double t, const SpaceVec& y) {
  if (x.leaves.size() != y.leaves.size()) throw StructuralError("vector shapes differ");
  SpaceVec r;
  r.leaves.reserve(x.leaves.size());
  for (std::size_t i = 0; i < x.leaves.size(); ++i) r.leaves.push_back(axpy(x.leaves[i], t, y.leaves[i]));
  return r;
}

inline SpaceVec scaled(const SpaceVec& x, double s) {
  SpaceVec r;
  for (const auto& v : x.leaves) r.leaves.push_back(scaled(v, s));
  return r;
}

inline SpaceVec zero_vec(const SpaceExpr& s) { return SpaceVec{std::vector<SparseVec>(s.leaf_count())}; }

namespace detail {

inline void require_shape(const SpaceExpr& s, const SpaceVec& v) {
  if (v.leaves.size() != s.leaf_count()) throw StructuralError("vector does not match the space's leaf count");
}

inline double norm_at(const SpaceExpr& s, const SpaceVec& v, std::size_t& k) {
  if (s.is_leaf()) return lp_norm(v.leaves[k++], s.p());
  const double a = norm_at(s.left(), v, k);
  const double b = norm_at(s.right(), v, k);
  return eval(s.norm(), {a, b});
}

inline double leaf_dirderiv(double p, const SparseVec& x, const SparseVec& y) {
  if (x.empty()) return lp_norm(y, p);
  if (p == 1.0) {
    double r = 0.0;
    for (const auto& [i, v] : y.entries()) {
      const double xi = x.get(i);
      r += xi == 0.0 ? std::abs(v) : std::copysign(1.0, xi) * v;
    }
    return r;
  }
  if (std::isinf(p)) {
    const double m = lp_norm(x, p);
    double r = -kInf;
    for (const auto& [i, v] : x.entries())
      if (std::abs(v) == m) r = std::max(r, std::copysign(1.0, v) * y.get(i));
    return r;
  }
  const double nx = lp_norm(x, p);
  double r = 0.0;
  for (const auto& [i, v] : x.entries()) r += std::copysign(std::pow(std::abs(v) / nx, p - 1.0), v) * y.get(i);
  return r;
}

inline double dirderiv_at(const SpaceExpr& s, const SpaceVec& x, const SpaceVec& y, std::size_t& k) {
  if (s.is_leaf()) {
    const double r = leaf_dirderiv(s.p(), x.leaves[k], y.leaves[k]);
    ++k;
    return r;
  }
  const std::size_t start = k;
  std::size_t probe = start;
  const double sa = norm_at(s.left(), x, probe);
  const double sb = norm_at(s.right(), x, probe);
  const double da = dirderiv_at(s.left(), x, y, k);
  const double db = dirderiv_at(s.right(), x, y, k);
  if (sa == 0.0 && sb == 0.0) {
    std::size_t j = start;
    const double ya = norm_at(s.left(), y, j);
    const double yb = norm_at(s.right(), y, j);
    return eval(s.norm(), {ya, yb});
  }
  double best = -kInf;
  for (const auto& g : subdiff2(s.norm(), {sa, sb})) best = std::max(best, g.c * da + g.d * db);
  return best;
}

}  // namespace detail

inline double norm(const SpaceExpr& s, const SpaceVec& v) {
  detail::require_shape(s, v);
  std::size_t k = 0;
  return detail::norm_at(s, v, k);
}

/// One-sided directional derivative lim_{t->0+} (||x+ty|| - ||x||)/t, by
/// the chain rule through the subdifferential of each sum norm.
inline double dirderiv(const SpaceExpr& s, const SpaceVec& x, const SpaceVec& y) {
  detail::require_shape(s, x);
  detail::require_shape(s, y);
  std::size_t k = 0;
  return detail::dirderiv_at(s, x, y, k);
}

/// d+(x; y) + d+(x; -y), the ray limit of (||x+ty|| + ||x-ty|| - 2||x||)/t.
inline double tau(const SpaceExpr& s, const SpaceVec& x, const SpaceVec& y) {
  return dirderiv(s, x, y) + dirderiv(s, x, scaled(y, -1.0));
}

/// g(t) = (||x+ty|| + ||x-ty|| - 2||x||)/t for each t. Non-increasing along
/// a decreasing t sequence and bounded below by tau. y = 0 gives zeros.
inline std::vector<double> tau_fd_bracket(const SpaceExpr& s, const SpaceVec& x, const SpaceVec& y,
                                          const std::vector<double>& t_seq) {
  detail::require_shape(s, x);
  detail::require_shape(s, y);
  for (std::size_t i = 0; i < t_seq.size(); ++i) {
    if (!(t_seq[i] > 0.0) || (i > 0 && !(t_seq[i] < t_seq[i - 1])))
      throw DomainError("t_seq must be positive and strictly decreasing");
  }
  std::vector<double> g(t_seq.size(), 0.0);
  if (y.is_zero()) return g;
  const double nx = norm(s, x);
  for (std::size_t i = 0; i < t_seq.size(); ++i) {
    const double t = t_seq[i];
    g[i] = (norm(s, axpy(x, t, y)) + norm(s, axpy(x, -t, y)) - 2.0 * nx) / t;
  }
  return g;
}

}  // namespace octanorm
