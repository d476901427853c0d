#pragma once

namespace hotspots {

enum class RootFamily {
  JZero,  ///< first positive zero j_{nu,1} of J_nu
  PRoot,  ///< first positive critical point p_{d/2,1} of x^{1-d/2} J_{d/2}(x)
};

const char* to_string(RootFamily family) noexcept;

/// One computed root with outward-rounded bounds on its square.
struct BesselZeroRecord {
  double nu = 0.0;
  RootFamily family = RootFamily::JZero;
  double value = 0.0;
  double value_squared_up = 0.0;
  double value_squared_down = 0.0;
  /// Defining function at `value`: J_nu(value) for JZero, the normalized
  /// reduced equation 1 - x J_{nu+1}(x) / J_nu(x) for PRoot.
  double residual = 0.0;
  /// Estimated absolute error of `value` (before outward nudging).
  double error_estimate = 0.0;
};

struct ZeroOptions {
  double scan_step = 0.25;
  double bisect_width = 1e-6;
  /// Relative step size at which secant polishing stops.
  double polish_tol = 1e-12;
};

inline constexpr double kMaxZeroOrder = 110.0;
inline constexpr int kMinPRootDim = 2;
inline constexpr int kMaxPRootDim = 200;

/// j_{nu,1} for 0 <= nu <= kMaxZeroOrder.
BesselZeroRecord first_bessel_zero(double nu, const ZeroOptions& options = {});

/// p_{d/2,1} for 2 <= d <= 200, found from the reduced equation
/// J_{d/2}(x) = x J_{d/2+1}(x).
BesselZeroRecord first_p_root(int d, const ZeroOptions& options = {});

}  // namespace hotspots
