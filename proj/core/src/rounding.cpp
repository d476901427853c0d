#include "hotspots/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hotspots {
namespace {

double round_scaled(double x, double scale, RoundMode mode) {
  const double y = x * scale;
  switch (mode) {
    case RoundMode::HalfUp:
      return std::floor(y + 0.5) / scale;
    case RoundMode::Up: {
      double k = std::ceil(y);
      if ((k - 1.0) / scale >= x) k -= 1.0;
      while (k / scale < x) k += 1.0;
      return k / scale;
    }
    case RoundMode::Down: {
      double k = std::floor(y);
      if ((k + 1.0) / scale <= x) k += 1.0;
      while (k / scale > x) k -= 1.0;
      return k / scale;
    }
  }
  return x;
}

int decimals_for_significant(double x, int digits) {
  return digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(x))));
}

}  // namespace

double round_decimals(double x, int digits, RoundMode mode) {
  if (!std::isfinite(x)) return x;
  return round_scaled(x, std::pow(10.0, digits), mode);
}

double round_significant(double x, int digits, RoundMode mode) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  return round_decimals(x, decimals_for_significant(x, digits), mode);
}

std::string format_significant(double x, int digits) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  if (x == 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", std::clamp(digits - 1, 0, 30), 0.0);
    return buf;
  }
  double rounded = round_significant(x, digits, RoundMode::HalfUp);
  int decimals = decimals_for_significant(rounded, digits);
  char buf[64];
  if (decimals < 0 || decimals > 12) {
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, rounded);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  }
  return buf;
}

}  // namespace hotspots
