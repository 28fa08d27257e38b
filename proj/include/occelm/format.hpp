#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace occelm {

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_double(double value) {
  if (std::isnan(value)) return "NAN";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Fixed-point rendering for human-facing report columns.
inline std::string format_fixed(double value, int digits) {
  if (std::isnan(value)) return "NAN";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

}  // namespace occelm
