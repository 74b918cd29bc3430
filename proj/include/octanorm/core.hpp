#pragma once

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace octanorm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-range numeric input.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed representation (bad polygon, bad weights, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Space and vector shapes disagree.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Fixed numeric tolerances. Defaults are the documented values; the CLI
/// overrides them from OCTANORM_TOL_* environment variables.
struct Tolerances {
  double sphere = 1e-9;      // |N(v) - 1| accepted as "on the unit sphere"
  double bisection = 1e-12;  // final bracket width of bisection searches
  double golden = 1e-10;     // final bracket width of golden-section searches
  double verdict = 1e-9;     // residual accepted by numeric property checkers

  static Tolerances from_env() {
    Tolerances t;
    auto read = [](const char* name, double& slot) {
      if (const char* raw = std::getenv(name)) {
        char* end = nullptr;
        const double v = std::strtod(raw, &end);
        if (end != raw && *end == '\0' && std::isfinite(v) && v > 0) slot = v;
      }
    };
    read("OCTANORM_TOL_SPHERE", t.sphere);
    read("OCTANORM_TOL_BISECTION", t.bisection);
    read("OCTANORM_TOL_GOLDEN", t.golden);
    read("OCTANORM_TOL_VERDICT", t.verdict);
    return t;
  }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec2 abs(Vec2 v) { return {std::abs(v.x), std::abs(v.y)}; }

/// A functional (c, d) acting on R^2 by (a, b) -> a*c + b*d. Norming
/// functionals of positive points are themselves positive.
struct Functional2 {
  double c = 0.0;
  double d = 0.0;

  constexpr double operator()(Vec2 v) const { return c * v.x + d * v.y; }
  constexpr Vec2 as_vec() const { return {c, d}; }
  friend constexpr bool operator==(Functional2, Functional2) = default;
  friend constexpr bool operator<(Functional2 l, Functional2 r) {
    return l.c < r.c || (l.c == r.c && l.d < r.d);
  }
};

inline void require_finite(Vec2 v, const char* what) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
    throw DomainError(std::string(what) + ": non-finite input");
  }
}

}  // namespace octanorm
