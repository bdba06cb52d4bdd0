#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace peerrank {

/// Shortest round-trip decimal representation; locale-free and deterministic.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace peerrank
