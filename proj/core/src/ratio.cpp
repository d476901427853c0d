#include "hotspots/ratio.hpp"

#include <cmath>
#include <sstream>

#include "hotspots/error.hpp"
#include "hotspots/rounding.hpp"

namespace hotspots {
namespace {

void require_dim(int d) {
  if (d < 2) {
    std::ostringstream os;
    os << "ratio bound needs dimension d >= 2, got " << d;
    fail(ErrorKind::OutOfDomain, os.str());
  }
}

void require_below_one(const RatioBoundSpec& spec) {
  if (!(spec.value > 0.0 && spec.value < 1.0)) {
    std::ostringstream os;
    os << "ratio bound r(" << spec.d << ") = " << spec.value << " (" << to_string(spec.kind)
       << ") is not in (0, 1)";
    fail(ErrorKind::Infeasible, os.str());
  }
}

}  // namespace

const char* to_string(RatioKind kind) noexcept {
  switch (kind) {
    case RatioKind::BesselExact:
      return "bessel";
    case RatioKind::ClosedForm:
      return "closed";
    case RatioKind::AsymptoticFourOverD:
      return "4overd";
    case RatioKind::Custom:
      return "custom";
  }
  return "unknown";
}

RatioBoundSpec ratio_upper_bound(int d, RatioKind kind) {
  require_dim(d);
  RatioBoundSpec spec;
  spec.kind = kind;
  spec.d = d;
  const double dd = d;
  switch (kind) {
    case RatioKind::BesselExact: {
      spec.p_root = first_p_root(d);
      spec.j_zero = first_bessel_zero(0.5 * dd - 1.0);
      spec.p_squared = spec.p_root->value_squared_up;
      spec.j_squared = spec.j_zero->value_squared_down;
      spec.value = *spec.p_squared / *spec.j_squared;
      break;
    }
    case RatioKind::ClosedForm:
      spec.value = (4.0 * dd + 8.0) / (dd * (dd + 8.0));
      break;
    case RatioKind::AsymptoticFourOverD:
      spec.value = 4.0 / dd;
      break;
    case RatioKind::Custom:
      fail(ErrorKind::OutOfDomain, "custom ratio needs a value; use custom_ratio(d, value)");
  }
  require_below_one(spec);
  return spec;
}

RatioBoundSpec custom_ratio(int d, double value) {
  require_dim(d);
  RatioBoundSpec spec;
  spec.kind = RatioKind::Custom;
  spec.d = d;
  spec.value = value;
  if (!std::isfinite(value)) fail(ErrorKind::OutOfDomain, "custom ratio must be finite");
  require_below_one(spec);
  return spec;
}

RatioBoundSpec round_ratio_up(RatioBoundSpec spec, int decimals) {
  if (decimals < 1 || decimals > 15) {
    fail(ErrorKind::OutOfDomain, "ratio rounding needs 1..15 decimal places");
  }
  if (spec.p_squared && spec.j_squared) {
    spec.p_squared = round_significant(*spec.p_squared, kPublishedSquareDigits, RoundMode::Up);
    spec.j_squared = round_significant(*spec.j_squared, kPublishedSquareDigits, RoundMode::Down);
    spec.value = *spec.p_squared / *spec.j_squared;
  }
  spec.value = round_decimals(spec.value, decimals, RoundMode::Up);
  require_below_one(spec);
  return spec;
}

RatioChoice parse_ratio_choice(const std::string& text) {
  if (text == "bessel") return {RatioKind::BesselExact, 0.0};
  if (text == "closed") return {RatioKind::ClosedForm, 0.0};
  if (text == "4overd") return {RatioKind::AsymptoticFourOverD, 0.0};
  const std::string prefix = "custom:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string number = text.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size()) {
      fail(ErrorKind::OutOfDomain, "cannot parse custom ratio value '" + number + "'");
    }
    return {RatioKind::Custom, v};
  }
  fail(ErrorKind::OutOfDomain,
       "unknown ratio '" + text + "' (expected bessel, closed, 4overd or custom:<v>)");
}

RatioBoundSpec make_ratio(int d, const RatioChoice& choice) {
  return choice.kind == RatioKind::Custom ? custom_ratio(d, choice.custom_value)
                                          : ratio_upper_bound(d, choice.kind);
}

}  // namespace hotspots
