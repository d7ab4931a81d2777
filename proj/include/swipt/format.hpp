#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "swipt/errors.hpp"

namespace swipt {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace swipt
