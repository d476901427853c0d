#pragma once

// Bessel functions of the first kind and log-gamma for real, nonnegative
// orders. Accuracy targets the ranges needed by the zero finders for
// dimensions up to 200.

namespace hotspots {

/// Largest supported Bessel order.
inline constexpr double kMaxBesselOrder = 120.0;
/// Largest supported log_gamma argument.
inline constexpr double kMaxLogGammaArg = 500.0;

/// Order nu of a Bessel function; finite and in [0, kMaxBesselOrder].
class BesselOrder {
 public:
  explicit BesselOrder(double nu);

  double nu() const noexcept { return nu_; }

 private:
  double nu_;
};

struct EvalResult {
  double value = 0.0;
  /// Heuristic (not rigorous) absolute error estimate.
  double est_abs_error = 0.0;
};

/// J_nu(x) for x >= 0.
///
/// Uses the ascending series when its terms decrease from the start
/// (x^2 <= 4(nu+1)), and Miller backward recurrence normalized by the
/// Neumann identity (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x)
/// otherwise. Both run in extended precision.
EvalResult bessel_j(BesselOrder order, double x);

/// Convenience overload returning only the value.
double bessel_j_value(double nu, double x);

/// ln Gamma(x) for 0 < x <= kMaxLogGammaArg. Reentrant (no signgam).
double log_gamma(double x);

}  // namespace hotspots
