#include "hotspots/specialfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hotspots/error.hpp"

namespace hotspots {
namespace {

using real = long double;

constexpr real kEpsExt = std::numeric_limits<real>::epsilon();

// Bernoulli coefficients B_{2k} / (2k (2k-1)) for the Stirling series.
constexpr real kStirling[] = {
    1.0L / 12.0L,          -1.0L / 360.0L,        1.0L / 1260.0L,
    -1.0L / 1680.0L,       1.0L / 1188.0L,        -691.0L / 360360.0L,
    1.0L / 156.0L,         -3617.0L / 122400.0L,
};

real log_gamma_ext(real x) {
  constexpr real kShiftTo = 20.0L;
  real shift = 0.0L;
  // Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)); the product stays
  // far inside extended range for x >= tiny and n <= 20.
  if (x < kShiftTo) {
    real prod = 1.0L;
    while (x < kShiftTo) {
      prod *= x;
      x += 1.0L;
    }
    shift = std::log(prod);
  }
  const real inv = 1.0L / x;
  const real inv2 = inv * inv;
  real series = 0.0L;
  real power = inv;
  for (real c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  constexpr real kHalfLog2Pi = 0.918938533204672741780329736405617639861L;
  return (x - 0.5L) * std::log(x) - x + kHalfLog2Pi + series - shift;
}

// Neumaier compensated accumulator.
struct CompensatedSum {
  real sum = 0.0L;
  real comp = 0.0L;

  void add(real v) {
    const real t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  real value() const { return sum + comp; }
};

struct ExtResult {
  real value;
  real err;
};

ExtResult series_j(real nu, real x) {
  const real log_prefactor = nu * std::log(x / 2.0L) - log_gamma_ext(nu + 1.0L);
  const real prefactor = std::exp(log_prefactor);
  const real q = -(x * x) / 4.0L;
  CompensatedSum acc;
  real term = 1.0L;
  real abs_sum = 0.0L;
  for (int k = 0; k < 1000; ++k) {
    acc.add(term);
    abs_sum += std::fabs(term);
    term *= q / (static_cast<real>(k + 1) * (nu + static_cast<real>(k + 1)));
    if (std::fabs(term) <= kEpsExt * std::fabs(acc.value()) * 0.25L) {
      break;
    }
  }
  const real value = prefactor * acc.value();
  const real err = prefactor * (std::fabs(term) + 4.0L * kEpsExt * abs_sum);
  return {value, err};
}

ExtResult miller_j(real nu, real x) {
  const int n = static_cast<int>(std::floor(nu));
  const real mu = nu - static_cast<real>(n);
  const real top = std::max(static_cast<real>(n), std::ceil(x));
  int start = static_cast<int>(top) + 20 + static_cast<int>(std::ceil(std::sqrt(40.0L * top)));
  start += start % 2;

  // g[j] = Gamma(mu + j) / j!, j >= 1; the j = 0 weight is Gamma(mu + 1).
  std::vector<real> g(start / 2 + 1);
  const real gamma_mu1 = std::exp(log_gamma_ext(mu + 1.0L));
  g[0] = gamma_mu1;
  if (g.size() > 1) g[1] = gamma_mu1;
  for (std::size_t j = 1; j + 1 < g.size(); ++j) {
    g[j + 1] = g[j] * (mu + static_cast<real>(j)) / static_cast<real>(j + 1);
  }
  auto weight = [&](int k) {  // k even
    const int j = k / 2;
    return j == 0 ? gamma_mu1 : (mu + static_cast<real>(k)) * g[j];
  };

  constexpr real kRescaleAbove = 1e1000L;
  constexpr real kRescaleBy = 1e-1000L;
  real f_next = 0.0L;     // order mu + k + 1
  real f = 1e-300L;       // order mu + k
  real norm = 0.0L;
  real abs_norm = 0.0L;
  real at_n = 0.0L;
  real at_n1 = 0.0L;
  for (int k = start; k >= 0; --k) {
    if (k % 2 == 0) {
      norm += weight(k) * f;
      abs_norm += std::fabs(weight(k) * f);
    }
    if (k == n) at_n = f;
    if (k == n + 1) at_n1 = f;
    if (k == 0) break;
    const real f_prev = 2.0L * (mu + static_cast<real>(k)) / x * f - f_next;
    f_next = f;
    f = f_prev;
    if (std::fabs(f) > kRescaleAbove) {
      f *= kRescaleBy;
      f_next *= kRescaleBy;
      norm *= kRescaleBy;
      abs_norm *= kRescaleBy;
      at_n *= kRescaleBy;
      at_n1 *= kRescaleBy;
    }
  }
  const real scale = std::pow(x / 2.0L, mu) / norm;
  const real value = at_n * scale;
  const real neighbour = std::fabs(at_n1 * scale);
  const real err = 16.0L * kEpsExt * static_cast<real>(start) *
                   (std::fabs(value) + neighbour + std::fabs(scale) * abs_norm * kEpsExt);
  return {value, err};
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  if (!std::isfinite(nu) || nu < 0.0 || nu > kMaxBesselOrder) {
    std::ostringstream os;
    os << "Bessel order " << nu << " outside supported range [0, " << kMaxBesselOrder << "]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
}

EvalResult bessel_j(BesselOrder order, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "bessel_j argument must be finite and nonnegative, got " << x;
    fail(ErrorKind::OutOfDomain, os.str());
  }
  const real nu = order.nu();
  if (x == 0.0) {
    return {nu == 0.0L ? 1.0 : 0.0, 0.0};
  }
  const real xe = x;
  const ExtResult r = (xe * xe <= 4.0L * (nu + 1.0L)) ? series_j(nu, xe) : miller_j(nu, xe);
  const double value = static_cast<double>(r.value);
  // Include the final rounding to double.
  const double err = static_cast<double>(r.err) +
                     std::fabs(value) * std::numeric_limits<double>::epsilon() * 0.5;
  return {value, err};
}

double bessel_j_value(double nu, double x) { return bessel_j(BesselOrder(nu), x).value; }

double log_gamma(double x) {
  if (!(x > 0.0) || !(x <= kMaxLogGammaArg)) {
    std::ostringstream os;
    os << "log_gamma argument " << x << " outside (0, " << kMaxLogGammaArg << "]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
  return static_cast<double>(log_gamma_ext(x));
}

}  // namespace hotspots
