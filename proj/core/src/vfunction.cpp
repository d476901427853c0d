#include "hotspots/vfunction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "hotspots/error.hpp"
#include "hotspots/specialfun.hpp"

namespace hotspots {
namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    std::ostringstream os;
    os << "V-function epsilon " << epsilon << " outside (0, 1]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
}

void require_dim(std::int64_t d, std::int64_t max_d, const char* name) {
  if (d < 1 || d > max_d) {
    std::ostringstream os;
    os << name << " V-function dimension " << d << " outside [1, " << max_d << "]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
}

// ln((1 + 1/sqrt(eps)) / 2), accurate as eps -> 1.
double log_half_one_plus_inv_sqrt(double epsilon) {
  return std::log1p(0.5 * (1.0 / std::sqrt(epsilon) - 1.0));
}

bool parse_double(const std::string& s, double& out) {
  std::istringstream is(s);
  is >> out;
  if (!is) return false;
  is >> std::ws;
  return is.eof();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const char* to_string(VKind kind) noexcept {
  switch (kind) {
    case VKind::Vogt:
      return "vogt";
    case VKind::ImprovedVogt:
      return "improved";
    case VKind::Custom:
      return "custom";
  }
  return "unknown";
}

double log_v(VKind kind, double epsilon, std::int64_t d) {
  require_epsilon(epsilon);
  const double dd = static_cast<double>(d);
  const double shape = 0.5 * dd * log_half_one_plus_inv_sqrt(epsilon);
  switch (kind) {
    case VKind::Vogt:
      require_dim(d, kMaxVogtDim, "Vogt");
      return 0.25 * std::numbers::ln2 + shape;
    case VKind::ImprovedVogt: {
      require_dim(d, kMaxImprovedVogtDim, "improved Vogt");
      // e^{d/4} sqrt(2) (2d)^{-d/4} sqrt(Gamma(d) / Gamma(d/2)) ((1 + 1/sqrt(eps)) / 2)^{d/2}
      const double constant = 0.25 * dd + 0.5 * std::numbers::ln2 - 0.25 * dd * std::log(2.0 * dd) +
                              0.5 * (log_gamma(dd) - log_gamma(0.5 * dd));
      return constant + shape;
    }
    case VKind::Custom:
      break;
  }
  fail(ErrorKind::OutOfDomain, "log_v(kind, ...) needs a closed-form kind; use VFunction::custom");
}

CustomVTable::CustomVTable(std::vector<double> epsilon, std::vector<double> log_v)
    : epsilon_(std::move(epsilon)), log_v_(std::move(log_v)) {
  if (epsilon_.size() != log_v_.size() || epsilon_.size() < 2) {
    fail(ErrorKind::OutOfDomain, "custom V table needs at least two (epsilon, log_v) rows");
  }
  for (std::size_t i = 0; i < epsilon_.size(); ++i) {
    if (!(epsilon_[i] > 0.0 && epsilon_[i] <= 1.0)) {
      fail(ErrorKind::OutOfDomain, "custom V table: epsilon values must lie in (0, 1]");
    }
    if (i > 0 && !(epsilon_[i] > epsilon_[i - 1])) {
      fail(ErrorKind::OutOfDomain, "custom V table: epsilon must be strictly increasing");
    }
    if (!(log_v_[i] >= 0.0) || !std::isfinite(log_v_[i])) {
      fail(ErrorKind::OutOfDomain, "custom V table: log_v must be finite and >= 0 (V >= 1)");
    }
  }
}

CustomVTable CustomVTable::from_csv_text(const std::string& text) {
  std::vector<double> eps, lv;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    double e = 0.0, v = 0.0;
    const bool ok = comma != std::string::npos && parse_double(trim(line.substr(0, comma)), e) &&
                    parse_double(trim(line.substr(comma + 1)), v);
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      fail(ErrorKind::OutOfDomain, "custom V table: malformed line " + std::to_string(lineno));
    }
    first = false;
    eps.push_back(e);
    lv.push_back(v);
  }
  return CustomVTable(std::move(eps), std::move(lv));
}

CustomVTable CustomVTable::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::OutOfDomain, "cannot open custom V table '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_csv_text(ss.str());
}

double CustomVTable::log_value(double epsilon) const {
  require_epsilon(epsilon);
  if (epsilon < epsilon_.front() || epsilon > epsilon_.back()) {
    std::ostringstream os;
    os << "custom V table: epsilon " << epsilon << " outside tabulated range [" << epsilon_.front()
       << ", " << epsilon_.back() << "]";
    fail(ErrorKind::OutOfDomain, os.str());
  }
  auto it = std::upper_bound(epsilon_.begin(), epsilon_.end(), epsilon);
  if (it == epsilon_.end()) return log_v_.back();
  const std::size_t hi = static_cast<std::size_t>(it - epsilon_.begin());
  const std::size_t lo = hi - 1;
  const double t = (epsilon - epsilon_[lo]) / (epsilon_[hi] - epsilon_[lo]);
  return log_v_[lo] + t * (log_v_[hi] - log_v_[lo]);
}

VFunction VFunction::vogt() { return VFunction(VKind::Vogt); }
VFunction VFunction::improved_vogt() { return VFunction(VKind::ImprovedVogt); }

VFunction VFunction::custom(CustomVTable table) {
  VFunction v(VKind::Custom);
  v.table_ = std::make_shared<const CustomVTable>(std::move(table));
  return v;
}

VFunction VFunction::of_kind(VKind kind) {
  if (kind == VKind::Custom) {
    fail(ErrorKind::OutOfDomain, "custom V-function needs a table");
  }
  return VFunction(kind);
}

double VFunction::log_value(double epsilon, std::int64_t d) const {
  if (kind_ == VKind::Custom) return table_->log_value(epsilon);
  return log_v(kind_, epsilon, d);
}

std::pair<double, double> VFunction::epsilon_domain() const {
  if (kind_ == VKind::Custom) return {table_->epsilon().front(), table_->epsilon().back()};
  return {std::numeric_limits<double>::min(), 1.0};
}

VFunctionSpec evaluate(const VFunction& v, double epsilon, std::int64_t d) {
  return {v.kind(), epsilon, d, v.log_value(epsilon, d)};
}

VFunction parse_vfunction(const std::string& text) {
  if (text == "vogt") return VFunction::vogt();
  if (text == "improved") return VFunction::improved_vogt();
  const std::string prefix = "custom:";
  if (text.rfind(prefix, 0) == 0) {
    return VFunction::custom(CustomVTable::from_csv(text.substr(prefix.size())));
  }
  fail(ErrorKind::OutOfDomain,
       "unknown V-function '" + text + "' (expected vogt, improved or custom:<file>)");
}

}  // namespace hotspots
