#pragma once

#include <cstdint>

#include "hotspots/ratio.hpp"
#include "hotspots/vfunction.hpp"

namespace hotspots {

// Hot Spots bound over the region A_d = (0, 1 - r) x [0, inf):
//
//   B(eps, a) = e^{r a} (1 + r V(eps, d) / (1 - eps - r) e^{-(1 - eps) a}).

/// Offset of the golden-section bracket from the open ends of (0, 1 - r).
inline constexpr double kEpsilonBracketOffset = 1e-6;
inline constexpr double kDefaultTolerance = 1e-9;

struct BoundQuery {
  int d = 2;
  RatioBoundSpec ratio;
  VFunction vfunction = VFunction::improved_vogt();
  /// Golden-section stopping width on epsilon; in [1e-12, 1e-2].
  double tolerance = kDefaultTolerance;
};

struct BoundResult {
  int d = 2;
  double r = 0.0;
  double epsilon_star = 0.0;
  double a_star = 0.0;
  double bound = 0.0;
  int evaluations = 0;
  VKind vkind = VKind::ImprovedVogt;
};

/// B(eps, a), summed as e^{ra} + exp(ra + ln r + ln V - ln(1-eps-r) - (1-eps) a).
double bound_value(std::int64_t d, double r, const VFunction& v, double epsilon, double a);

/// Stationary point of a -> B(eps, a): a* = ln V / (1 - eps).
double optimal_a(double epsilon, double r, double log_v);

/// B(eps, a*(eps)) = V^{r/(1-eps)} (1 - eps) / (1 - eps - r), returned as its logarithm.
double log_reduced_bound(double epsilon, double r, double log_v);

/// Golden-section search on eps of the reduced bound.
BoundResult optimize_bound(const BoundQuery& query);

/// Largest amount by which `result.bound` exceeds B on an n x n grid over
/// (0, 1 - r) x [0, 4 a*]; <= 0 means no grid probe beats the optimizer.
double optimality_audit(const BoundQuery& query, const BoundResult& result, int n = 100);

/// Parameters of the four-parameter (finite b) bound.
struct FiniteBParams {
  double delta = 0.0;
  double epsilon = 0.0;
  double a = 0.0;
  double b = 0.0;
  double rho_delta = 0.0;    ///< 1 - delta - r
  double rho_epsilon = 0.0;  ///< 1 - eps - r

  /// Validates delta, eps in (0, 1 - r) and b >= a >= 0.
  static FiniteBParams make(double delta, double epsilon, double a, double b, double r);
};

struct FiniteBTerms {
  double numerator = 0.0;
  double denominator = 0.0;
};

/// Numerator and denominator of the finite-b quotient in plain arithmetic.
FiniteBTerms finite_b_terms(std::int64_t d, double r, const VFunction& v, const FiniteBParams& p);

/// (e^{ra} - V(delta) e^{-rho_d b} + r V(eps) / rho_e (e^{-rho_e a} - e^{-rho_e b}))
///   / (1 - V(delta) e^{-rho_d b}),
/// evaluated with e^{ra} factored out. Throws ConstraintViolated when the
/// denominator is not positive.
double finite_b_bound(std::int64_t d, double r, const VFunction& v, const FiniteBParams& p);

}  // namespace hotspots
