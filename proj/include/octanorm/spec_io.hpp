#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "octanorm/seqspace.hpp"

// Norm specs:   lp:<p|inf>   ab:<a>,<b>   poly:[(x,y),...]   dual(<norm>)
// Space specs:  leaf:<p|inf>   sum(<norm>; <space>; <space>)
// Whitespace anywhere is ignored.

namespace octanorm {

namespace detail {

class SpecReader {
 public:
  explicit SpecReader(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
      s_.push_back(text[i]);
      pos_.push_back(i);
    }
    end_pos_ = text.size();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, k_ < pos_.size() ? pos_[k_] : end_pos_);
  }

  bool accept(std::string_view lit) {
    if (std::string_view(s_).substr(k_, lit.size()) != lit) return false;
    k_ += lit.size();
    return true;
  }
  void expect(std::string_view lit) {
    if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
  }

  double number(bool allow_inf) {
    if (allow_inf && accept("inf")) return kInf;
    const char* first = s_.data() + k_;
    const char* last = s_.data() + s_.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first || !std::isfinite(v)) fail("expected a number");
    k_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  void finish() {
    if (k_ != s_.size()) fail("unexpected trailing input");
  }

  AbsNorm2 norm() {
    if (accept("lp:")) return AbsNorm2::lp(number(true));
    if (accept("ab:")) {
      const double a = number(false);
      expect(",");
      return AbsNorm2::param_ab(a, number(false));
    }
    if (accept("poly:")) {
      expect("[");
      std::vector<Vec2> verts;
      do {
        expect("(");
        const double x = number(false);
        expect(",");
        const double y = number(false);
        expect(")");
        verts.push_back({x, y});
      } while (accept(","));
      expect("]");
      return AbsNorm2::polygon(Polygon2::from_vertices(std::move(verts)));
    }
    if (accept("dual(")) {
      AbsNorm2 base = norm();
      expect(")");
      return AbsNorm2::dual_of(base);
    }
    fail("expected a norm spec (lp:, ab:, poly:, dual()");
  }

  SpaceExpr space() {
    if (accept("leaf:")) return SpaceExpr::leaf(number(true));
    if (accept("sum(")) {
      AbsNorm2 n = norm();
      expect(";");
      SpaceExpr left = space();
      expect(";");
      SpaceExpr right = space();
      expect(")");
      return SpaceExpr::sum(std::move(n), std::move(left), std::move(right));
    }
    fail("expected a space spec (leaf:, sum()");
  }

 private:
  std::string s_;
  std::vector<std::size_t> pos_;
  std::size_t end_pos_ = 0;
  std::size_t k_ = 0;
};

}  // namespace detail

inline AbsNorm2 parse_norm(std::string_view text) {
  detail::SpecReader r(text);
  AbsNorm2 n = r.norm();
  r.finish();
  return n;
}

inline SpaceExpr parse_space(std::string_view text) {
  detail::SpecReader r(text);
  SpaceExpr s = r.space();
  r.finish();
  return s;
}

/// %.17g, so printed specs parse back to the same doubles.
inline std::string format_number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_spec(const AbsNorm2& n) {
  switch (n.kind()) {
    case NormKind::Lp:
      return "lp:" + format_number(n.p());
    case NormKind::ParamAB:
      return "ab:" + format_number(n.a()) + "," + format_number(n.b());
    case NormKind::Polygon: {
      std::string s = "poly:[";
      const auto& v = n.polygon_rep().vertices();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += "(" + format_number(v[i].x) + "," + format_number(v[i].y) + ")";
      }
      return s + "]";
    }
    case NormKind::DualOf:
      return "dual(" + to_spec(n.base()) + ")";
  }
  return {};
}

inline std::string to_spec(const SpaceExpr& s) {
  if (s.is_leaf()) return "leaf:" + format_number(s.p());
  return "sum(" + to_spec(s.norm()) + "; " + to_spec(s.left()) + "; " + to_spec(s.right()) + ")";
}

}  // namespace octanorm
