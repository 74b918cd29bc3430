#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace octanorm::cli {

using json = nlohmann::json;

/// JSON value for a double; non-finite values become "inf", "-inf", "nan".
inline json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace detail {

inline void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

inline void dump(const json& j, std::ostream& os, int depth) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        indent(os, depth + 1);
        os << json(it.key()).dump() << ": ";
        dump(it.value(), os, depth + 1);
      }
      os << "\n";
      indent(os, depth);
      os << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        indent(os, depth + 1);
        dump(j[i], os, depth + 1);
      }
      os << "\n";
      indent(os, depth);
      os << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << json(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")).dump();
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Pretty-printed JSON with object keys sorted and every float written with
/// 17 significant digits.
inline std::string dump(const json& j) {
  std::ostringstream os;
  detail::dump(j, os, 0);
  os << "\n";
  return os.str();
}

}  // namespace octanorm::cli
