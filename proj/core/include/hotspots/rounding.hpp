#pragma once

#include <string>

namespace hotspots {

enum class RoundMode { HalfUp, Up, Down };

/// Rounds to `digits` decimal places. Up/Down return the nearest decimal
/// that is >= / <= x when both are compared as doubles.
double round_decimals(double x, int digits, RoundMode mode);

/// Rounds to `digits` significant figures (same semantics as round_decimals).
double round_significant(double x, int digits, RoundMode mode);

/// Half-up rounding to `digits` significant figures, formatted with
/// trailing zeros kept ("3.3900", "3144.1").
std::string format_significant(double x, int digits = 5);

}  // namespace hotspots
