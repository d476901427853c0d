#pragma once

#include <optional>
#include <string>

#include "hotspots/zeros.hpp"

namespace hotspots {

enum class RatioKind {
  BesselExact,          ///< p_{d/2,1}^2 / j_{d/2-1,1}^2, outward rounded
  ClosedForm,           ///< (4d + 8) / (d (d + 8))
  AsymptoticFourOverD,  ///< 4 / d, needs d >= 5
  Custom,               ///< user-supplied value in (0, 1)
};

const char* to_string(RatioKind kind) noexcept;

/// An upper bound r(d) < 1 on mu_2 / lambda_1 for a class of domains.
struct RatioBoundSpec {
  RatioKind kind = RatioKind::ClosedForm;
  int d = 2;
  double value = 0.0;
  /// Populated for BesselExact only.
  std::optional<BesselZeroRecord> p_root;
  std::optional<BesselZeroRecord> j_zero;
  /// The squares the value was formed from (BesselExact only): outward
  /// rounded roots, or their published-precision roundings.
  std::optional<double> p_squared;
  std::optional<double> j_squared;
};

/// r(d) for the built-in kinds. Rejects Custom (use custom_ratio) and
/// AsymptoticFourOverD with d <= 4.
RatioBoundSpec ratio_upper_bound(int d, RatioKind kind);

/// User-supplied r(d) = value, which must lie in (0, 1).
RatioBoundSpec custom_ratio(int d, double value);

inline constexpr int kPublishedSquareDigits = 5;
inline constexpr int kPublishedRatioDecimals = 4;

/// Published-precision form of a ratio bound. For BesselExact, p^2 is
/// rounded up and j^2 down to kPublishedSquareDigits significant figures
/// before dividing; the ratio is then rounded up to `decimals` places.
/// Every step keeps r an upper bound; rejected if it reaches 1.
RatioBoundSpec round_ratio_up(RatioBoundSpec spec, int decimals = kPublishedRatioDecimals);

/// Parses "bessel", "closed", "4overd" or "custom:<v>".
struct RatioChoice {
  RatioKind kind = RatioKind::BesselExact;
  double custom_value = 0.0;
};
RatioChoice parse_ratio_choice(const std::string& text);
RatioBoundSpec make_ratio(int d, const RatioChoice& choice);

}  // namespace hotspots
