// SPDX-License-Identifier: Apache-2.0
#pragma once

// Locale-independent number formatting for text outputs.

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace hilbert_cone {

/// Shortest decimal that parses back to the same double; "inf" for +inf.
inline std::string format_shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Fixed-point with `digits` decimals.
inline std::string format_fixed(double v, int digits) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  if (res.ec != std::errc()) return format_shortest(v);
  std::string s(buf, res.ptr);
  if (s.find_first_not_of("-0.") == std::string::npos) s = "0";
  return s;
}

}  // namespace hilbert_cone
