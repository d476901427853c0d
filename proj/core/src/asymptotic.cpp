#include "hotspots/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hotspots/bound.hpp"
#include "hotspots/error.hpp"
#include "hotspots/vfunction.hpp"

namespace hotspots {
namespace {

constexpr std::int64_t kSearchCeiling = 1'000'000'000'000;

// 1 - eps_d = (2x + x^2) / (1 + x)^2 with x = c d^alpha, without cancellation.
double one_minus_epsilon_d(const AsymptoticParams& p, std::int64_t d) {
  const double x = p.c * std::pow(static_cast<double>(d), p.alpha);
  return (2.0 * x + x * x) / ((1.0 + x) * (1.0 + x));
}

}  // namespace

void AsymptoticParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::OutOfDomain, "asymptotic c must be > 0");
  if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::OutOfDomain, "asymptotic k must be > 0");
  if (!(alpha > -1.0 && alpha <= -0.5)) {
    std::ostringstream os;
    os << "asymptotic alpha " << alpha << " outside (-1, -1/2]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
}

double epsilon_d(const AsymptoticParams& params, std::int64_t d) {
  const double x = params.c * std::pow(static_cast<double>(d), params.alpha);
  return 1.0 / ((1.0 + x) * (1.0 + x));
}

double a_d(const AsymptoticParams& params, std::int64_t d) {
  return params.k * static_cast<double>(d);
}

bool is_feasible(const AsymptoticParams& params, std::int64_t d) {
  if (d < 5) return false;
  const double eps = epsilon_d(params, d);
  return eps > 0.0 && one_minus_epsilon_d(params, d) > 4.0 / static_cast<double>(d);
}

std::int64_t min_feasible_dimension(const AsymptoticParams& params) {
  params.validate();
  // Find a feasible d by doubling, then walk the boundary down. For alpha in
  // (-1, -1/2], c d^{alpha+1} grows monotonically so feasibility is an up-set.
  std::int64_t hi = 5;
  while (!is_feasible(params, hi)) {
    if (hi > kSearchCeiling / 2) {
      fail(ErrorKind::Infeasible, "asymptotic parameters infeasible for every d up to 1e12");
    }
    hi *= 2;
  }
  std::int64_t lo = std::max<std::int64_t>(5, hi / 2);
  if (is_feasible(params, lo)) return lo;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (is_feasible(params, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double asymptotic_bound(const AsymptoticParams& params, std::int64_t d) {
  params.validate();
  if (!is_feasible(params, d)) {
    std::ostringstream os;
    os << "asymptotic family infeasible at d = " << d << " (eps_d must lie in (0, 1 - 4/d)); "
       << "smallest feasible d is " << min_feasible_dimension(params);
    fail(ErrorKind::Infeasible, os.str());
  }
  const double r = 4.0 / static_cast<double>(d);
  return bound_value(d, r, VFunction::vogt(), epsilon_d(params, d), a_d(params, d));
}

std::vector<std::pair<std::int64_t, double>> sweep(const AsymptoticParams& params,
                                                   std::span<const std::int64_t> dims) {
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(dims.size());
  for (std::int64_t d : dims) out.emplace_back(d, asymptotic_bound(params, d));
  return out;
}

std::vector<std::int64_t> geometric_dims(std::int64_t dmin, std::int64_t dmax, int points) {
  if (dmin < 1 || dmax < dmin || points < 1) {
    fail(ErrorKind::OutOfDomain, "geometric_dims needs 1 <= dmin <= dmax and points >= 1");
  }
  std::vector<std::int64_t> dims;
  if (points == 1) {
    dims.push_back(dmin);
    return dims;
  }
  const double log_lo = std::log(static_cast<double>(dmin));
  const double log_hi = std::log(static_cast<double>(dmax));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    auto d = static_cast<std::int64_t>(std::llround(std::exp(log_lo + t * (log_hi - log_lo))));
    d = std::clamp(d, dmin, dmax);
    if (dims.empty() || d != dims.back()) dims.push_back(d);
  }
  return dims;
}

}  // namespace hotspots
