#include "hotspots/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hotspots/error.hpp"

namespace hotspots {
namespace {

void require_ratio(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << "ratio bound r = " << r << " must lie in (0, 1)";
    fail(ErrorKind::Infeasible, os.str());
  }
}

void require_in_region(double r, double epsilon, double a) {
  require_ratio(r);
  if (!(epsilon > 0.0 && epsilon < 1.0 - r) || !(a >= 0.0) || !std::isfinite(a)) {
    std::ostringstream os;
    os << "(eps, a) = (" << epsilon << ", " << a << ") outside A_d = (0, " << 1.0 - r
       << ") x [0, inf)";
    fail(ErrorKind::OutOfDomain, os.str());
  }
}

// ln(e^x + e^y)
double log_add_exp(double x, double y) {
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double bound_value(std::int64_t d, double r, const VFunction& v, double epsilon, double a) {
  require_in_region(r, epsilon, a);
  const double lv = v.log_value(epsilon, d);
  const double first = r * a;
  const double second =
      r * a + std::log(r) + lv - std::log((1.0 - epsilon) - r) - (1.0 - epsilon) * a;
  return std::exp(log_add_exp(first, second));
}

double optimal_a(double epsilon, double r, double log_v) {
  require_ratio(r);
  if (!(epsilon > 0.0 && epsilon < 1.0 - r) || !(log_v >= 0.0)) {
    fail(ErrorKind::OutOfDomain, "optimal_a needs eps in (0, 1 - r) and ln V >= 0");
  }
  return log_v / (1.0 - epsilon);
}

double log_reduced_bound(double epsilon, double r, double log_v) {
  return r / (1.0 - epsilon) * log_v + std::log1p(-epsilon) - std::log((1.0 - epsilon) - r);
}

BoundResult optimize_bound(const BoundQuery& query) {
  const double r = query.ratio.value;
  require_ratio(r);
  if (query.d < 2) fail(ErrorKind::OutOfDomain, "optimize_bound needs d >= 2");
  if (!(query.tolerance >= 1e-12 && query.tolerance <= 1e-2)) {
    fail(ErrorKind::OutOfDomain, "optimize_bound tolerance must lie in [1e-12, 1e-2]");
  }
  const auto [dom_lo, dom_hi] = query.vfunction.epsilon_domain();
  double lo = std::max(kEpsilonBracketOffset, dom_lo);
  double hi = std::min(1.0 - r - kEpsilonBracketOffset, dom_hi);
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "optimize_bound: empty epsilon bracket [" << lo << ", " << hi << "]";
    fail(ErrorKind::Infeasible, os.str());
  }

  int evaluations = 0;
  auto objective = [&](double eps) {
    ++evaluations;
    return log_reduced_bound(eps, r, query.vfunction.log_value(eps, query.d));
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double left = hi - inv_phi * (hi - lo);
  double right = lo + inv_phi * (hi - lo);
  double f_left = objective(left);
  double f_right = objective(right);
  while (hi - lo > query.tolerance) {
    // Ties move the bracket left.
    if (f_left <= f_right) {
      hi = right;
      right = left;
      f_right = f_left;
      left = hi - inv_phi * (hi - lo);
      f_left = objective(left);
    } else {
      lo = left;
      left = right;
      f_left = f_right;
      right = lo + inv_phi * (hi - lo);
      f_right = objective(right);
    }
  }

  BoundResult result;
  result.d = query.d;
  result.r = r;
  result.epsilon_star = 0.5 * (lo + hi);
  const double lv = query.vfunction.log_value(result.epsilon_star, query.d);
  result.a_star = optimal_a(result.epsilon_star, r, lv);
  result.bound = bound_value(query.d, r, query.vfunction, result.epsilon_star, result.a_star);
  result.evaluations = evaluations + 2;
  result.vkind = query.vfunction.kind();
  return result;
}

double optimality_audit(const BoundQuery& query, const BoundResult& result, int n) {
  const double r = result.r;
  const auto [dom_lo, dom_hi] = query.vfunction.epsilon_domain();
  const double a_max = result.a_star > 0.0 ? 4.0 * result.a_star : 1.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double eps = (1.0 - r) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    if (eps < dom_lo || eps > dom_hi) continue;
    for (int j = 0; j < n; ++j) {
      const double a = a_max * static_cast<double>(j) / static_cast<double>(n - 1);
      const double probe = bound_value(query.d, r, query.vfunction, eps, a);
      worst = std::max(worst, result.bound - probe);
    }
  }
  return worst;
}

FiniteBParams FiniteBParams::make(double delta, double epsilon, double a, double b, double r) {
  require_ratio(r);
  if (!(delta > 0.0 && delta < 1.0 - r) || !(epsilon > 0.0 && epsilon < 1.0 - r)) {
    fail(ErrorKind::OutOfDomain, "finite-b bound needs delta, eps in (0, 1 - r)");
  }
  if (!(a >= 0.0) || !(b >= a) || !std::isfinite(b)) {
    fail(ErrorKind::OutOfDomain, "finite-b bound needs b >= a >= 0");
  }
  FiniteBParams p;
  p.delta = delta;
  p.epsilon = epsilon;
  p.a = a;
  p.b = b;
  p.rho_delta = (1.0 - delta) - r;
  p.rho_epsilon = (1.0 - epsilon) - r;
  return p;
}

FiniteBTerms finite_b_terms(std::int64_t d, double r, const VFunction& v, const FiniteBParams& p) {
  const double v_delta = std::exp(v.log_value(p.delta, d));
  const double v_eps = std::exp(v.log_value(p.epsilon, d));
  const double tail = v_delta * std::exp(-p.rho_delta * p.b);
  FiniteBTerms t;
  t.numerator = std::exp(r * p.a) - tail +
                r * v_eps / p.rho_epsilon *
                    (std::exp(-p.rho_epsilon * p.a) - std::exp(-p.rho_epsilon * p.b));
  t.denominator = 1.0 - tail;
  return t;
}

double finite_b_bound(std::int64_t d, double r, const VFunction& v, const FiniteBParams& p) {
  const double log_tail = v.log_value(p.delta, d) - p.rho_delta * p.b;
  if (!(log_tail < 0.0)) {
    std::ostringstream os;
    os << "constraint 1 - V(delta, d) exp(-rho(delta, d) b) > 0 violated: ln V(delta, d) = "
       << v.log_value(p.delta, d) << " >= rho(delta, d) b = " << p.rho_delta * p.b;
    fail(ErrorKind::ConstraintViolated, os.str());
  }
  // Factor e^{ra} out of the numerator:
  //   1 - e^{log_tail - ra} + (r V(eps) / rho_e) e^{-(1-eps) a} (1 - e^{-rho_e (b - a)}).
  const double ra = r * p.a;
  const double scaled_tail = std::exp(log_tail - ra);
  const double log_integral = std::log(r) + v.log_value(p.epsilon, d) - std::log(p.rho_epsilon) -
                              (1.0 - p.epsilon) * p.a;
  const double integral = std::exp(log_integral) * -std::expm1(-p.rho_epsilon * (p.b - p.a));
  const double log_numerator = ra + std::log1p(integral - scaled_tail);
  const double log_denominator = std::log1p(-std::exp(log_tail));
  return std::exp(log_numerator - log_denominator);
}

}  // namespace hotspots
