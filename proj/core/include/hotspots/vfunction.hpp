#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hotspots {

enum class VKind { Vogt, ImprovedVogt, Custom };

const char* to_string(VKind kind) noexcept;

inline constexpr std::int64_t kMaxVogtDim = 1'000'000'000;
inline constexpr std::int64_t kMaxImprovedVogtDim = 200;

/// Tabulated (epsilon, ln V) curve, linearly interpolated; no extrapolation.
class CustomVTable {
 public:
  CustomVTable(std::vector<double> epsilon, std::vector<double> log_v);

  /// Two-column CSV "epsilon,log_v"; a non-numeric first line is a header.
  static CustomVTable from_csv(const std::filesystem::path& path);
  static CustomVTable from_csv_text(const std::string& text);

  double log_value(double epsilon) const;

  const std::vector<double>& epsilon() const noexcept { return epsilon_; }
  const std::vector<double>& log_v() const noexcept { return log_v_; }

 private:
  std::vector<double> epsilon_;
  std::vector<double> log_v_;
};

/// A V-function: sup_x P_x(tau_D > t) <= V(eps, d) exp(-(1 - eps) lambda_D t).
/// Every evaluation is returned as ln V.
class VFunction {
 public:
  static VFunction vogt();
  static VFunction improved_vogt();
  static VFunction custom(CustomVTable table);
  static VFunction of_kind(VKind kind);

  VKind kind() const noexcept { return kind_; }

  /// ln V(epsilon, d); epsilon in (0, 1]. Custom tables ignore d.
  double log_value(double epsilon, std::int64_t d) const;

  /// Closed interval of epsilon on which log_value is defined
  /// ((0, 1] is reported as [min positive double, 1]).
  std::pair<double, double> epsilon_domain() const;

 private:
  explicit VFunction(VKind kind) : kind_(kind) {}

  VKind kind_;
  std::shared_ptr<const CustomVTable> table_;
};

/// ln V for the two closed-form V-functions.
double log_v(VKind kind, double epsilon, std::int64_t d);

struct VFunctionSpec {
  VKind kind = VKind::Vogt;
  double epsilon = 1.0;
  std::int64_t d = 2;
  double log_value = 0.0;
};

VFunctionSpec evaluate(const VFunction& v, double epsilon, std::int64_t d);

/// Parses "vogt", "improved" or "custom:<csv path>".
VFunction parse_vfunction(const std::string& text);

}  // namespace hotspots
