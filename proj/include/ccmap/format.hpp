#pragma once

// Round-trippable text for reals and vectors: 17 significant digits,
// independent of the global locale.

#include <ccmap/geometry.hpp>

#include <charconv>
#include <string>
#include <system_error>

namespace ccmap {

inline std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (r.ec != std::errc{}) return "?";
  return std::string(buf, r.ptr);
}

// "a,b,c"
inline std::string format_csv(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_real(v(i));
  }
  return s;
}

// "(a, b, c)"
inline std::string format_point(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_real(v(i));
  }
  return s + ")";
}

}  // namespace ccmap
