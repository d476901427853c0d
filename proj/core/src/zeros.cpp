#include "hotspots/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hotspots/error.hpp"
#include "hotspots/specialfun.hpp"

namespace hotspots {
namespace {

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

Bracket scan_for_sign_change(const std::function<double(double)>& f, double start, double limit,
                             double step, const char* what) {
  double x = start;
  double fx = f(x);
  if (!(fx > 0.0)) {
    std::ostringstream os;
    os << what << ": defining function not positive at scan start x=" << start
       << " (f=" << fx << "); the first root lies below the scan start";
    fail(ErrorKind::Accuracy, os.str());
  }
  while (x < limit) {
    const double next = x + step;
    const double f_next = f(next);
    if (!std::isfinite(f_next)) break;
    if (f_next <= 0.0) return {x, next, fx, f_next};
    x = next;
    fx = f_next;
  }
  std::ostringstream os;
  os << what << ": no sign change found in [" << start << ", " << limit << "]";
  fail(ErrorKind::Accuracy, os.str());
}

struct Converged {
  double x;
  double fx;
  double error;
};

// Bisection down to `width`, then safeguarded secant iteration.
Converged refine(const std::function<double(double)>& f, Bracket b, const ZeroOptions& opt) {
  while (b.hi - b.lo > opt.bisect_width) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double fm = f(mid);
    if (fm == 0.0) return {mid, 0.0, std::numeric_limits<double>::epsilon() * mid};
    if (fm > 0.0) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }

  double x0 = b.lo, f0 = b.f_lo;
  double x1 = b.hi, f1 = b.f_hi;
  double slope = (f1 - f0) / (x1 - x0);
  double best_x = std::fabs(f0) < std::fabs(f1) ? x0 : x1;
  double best_f = std::fabs(f0) < std::fabs(f1) ? f0 : f1;
  for (int iter = 0; iter < 100; ++iter) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (x2 <= b.lo || x2 >= b.hi) {
      // A secant step onto a bracket end means the step is below resolution.
      if (std::fabs(x2 - x1) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x1)) break;
      x2 = 0.5 * (b.lo + b.hi);
    }
    const double f2 = f(x2);
    if (f2 > 0.0) {
      b.lo = x2;
    } else {
      b.hi = x2;
    }
    if (x2 != x1) slope = (f2 - f1) / (x2 - x1);
    const double step = std::fabs(x2 - x1);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (std::fabs(f2) < std::fabs(best_f)) {
      best_x = x2;
      best_f = f2;
    }
    if (f1 == 0.0 || step <= opt.polish_tol * std::max(1.0, std::fabs(x1))) break;
  }
  const double ulp = std::nextafter(best_x, std::numeric_limits<double>::infinity()) - best_x;
  const double newton = (slope != 0.0 && std::isfinite(slope)) ? std::fabs(best_f / slope) : 0.0;
  return {best_x, best_f, newton + 4.0 * ulp};
}

BesselZeroRecord make_record(double nu, RootFamily family, const Converged& c) {
  BesselZeroRecord rec;
  rec.nu = nu;
  rec.family = family;
  rec.value = c.x;
  rec.residual = c.fx;
  rec.error_estimate = c.error;
  const double up = c.x + 2.0 * c.error;
  const double down = std::max(0.0, c.x - 2.0 * c.error);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  rec.value_squared_up = std::nextafter(up * up, kInf);
  rec.value_squared_down = std::nextafter(down * down, -kInf);
  return rec;
}

}  // namespace

const char* to_string(RootFamily family) noexcept {
  switch (family) {
    case RootFamily::JZero:
      return "j_zero";
    case RootFamily::PRoot:
      return "p_root";
  }
  return "unknown";
}

BesselZeroRecord first_bessel_zero(double nu, const ZeroOptions& options) {
  if (!std::isfinite(nu) || nu < 0.0 || nu > kMaxZeroOrder) {
    std::ostringstream os;
    os << "first_bessel_zero: order " << nu << " outside [0, " << kMaxZeroOrder << "]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
  const BesselOrder order(nu);
  auto f = [&](double x) { return bessel_j(order, x).value; };
  // Scan start uses the dimension d = 2 nu + 2 for which this is j_{d/2-1,1}.
  const double start = std::max(1.0, std::sqrt(2.0 * nu + 2.0));
  const Bracket b = scan_for_sign_change(f, start, 2.0 * nu + 30.0, options.scan_step,
                                         "first_bessel_zero");
  const Converged c = refine(f, b, options);
  if (std::fabs(c.fx) > 1e-10) {
    fail(ErrorKind::Accuracy, "first_bessel_zero: residual above 1e-10");
  }
  return make_record(nu, RootFamily::JZero, c);
}

BesselZeroRecord first_p_root(int d, const ZeroOptions& options) {
  if (d < kMinPRootDim || d > kMaxPRootDim) {
    std::ostringstream os;
    os << "first_p_root: dimension " << d << " outside [" << kMinPRootDim << ", " << kMaxPRootDim
       << "]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
  const double nu = 0.5 * d;
  const BesselOrder order(nu);
  const BesselOrder order_up(nu + 1.0);
  // (x^{-nu} J_nu)' = -x^{-nu} J_{nu+1}, so
  // (x^{1-nu} J_nu)' = x^{-nu} (J_nu(x) - x J_{nu+1}(x)).
  // Dividing by J_nu > 0 (below j_{nu,1}) keeps the equation O(1) at large nu.
  auto g = [&](double x) {
    const double j_nu = bessel_j(order, x).value;
    const double j_next = bessel_j(order_up, x).value;
    return 1.0 - x * j_next / j_nu;
  };
  const double start = std::max(1.0, std::sqrt(static_cast<double>(d)));
  const Bracket b = scan_for_sign_change(g, start, start + 20.0, options.scan_step, "first_p_root");
  const Converged c = refine(g, b, options);
  if (std::fabs(c.fx) > 1e-10) {
    fail(ErrorKind::Accuracy, "first_p_root: residual above 1e-10");
  }
  return make_record(nu, RootFamily::PRoot, c);
}

}  // namespace hotspots
