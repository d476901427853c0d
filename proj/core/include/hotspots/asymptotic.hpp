#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hotspots {

// Large-d family eps_d = (1 + c d^alpha)^{-2}, a_d = k d (the exponent on
// d in a_d is fixed at 1), with r(d) = 4/d and the Vogt V-function.
struct AsymptoticParams {
  double c = 1.0;
  double alpha = -0.5;  ///< in (-1, -1/2]
  double k = 0.125;

  /// Throws OutOfDomain unless c > 0, k > 0 and alpha in (-1, -1/2].
  void validate() const;
};

double epsilon_d(const AsymptoticParams& params, std::int64_t d);
double a_d(const AsymptoticParams& params, std::int64_t d);

/// True iff d >= 5 and eps_d lies in (0, 1 - 4/d).
bool is_feasible(const AsymptoticParams& params, std::int64_t d);

/// Smallest d >= 5 from which every larger d (up to 10^12) is feasible.
std::int64_t min_feasible_dimension(const AsymptoticParams& params);

/// B(eps_d, a_d) with r = 4/d and Vogt V, evaluated in log space.
/// Throws Infeasible (reporting min_feasible_dimension) for infeasible d.
double asymptotic_bound(const AsymptoticParams& params, std::int64_t d);

std::vector<std::pair<std::int64_t, double>> sweep(const AsymptoticParams& params,
                                                   std::span<const std::int64_t> dims);

/// `points` geometrically spaced integer dimensions in [dmin, dmax], deduplicated.
std::vector<std::int64_t> geometric_dims(std::int64_t dmin, std::int64_t dmax, int points);

}  // namespace hotspots
