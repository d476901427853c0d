#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace hotspots {

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// 16 lowercase hex digits.
inline std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

}  // namespace hotspots
