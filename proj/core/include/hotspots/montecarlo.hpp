#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hotspots/vfunction.hpp"

namespace hotspots {

// Exit-time simulation for Brownian motion running at twice the usual speed
// (generator = full Laplacian, per-coordinate increment variance 2 dt).

struct Ball {
  double radius = 1.0;  ///< centred at the origin
};

struct Box {
  std::vector<double> sides;  ///< [0, L_1] x ... x [0, L_n]
};

class SimDomain {
 public:
  static SimDomain ball(int dim, double radius);
  static SimDomain box(std::vector<double> sides);

  int dim() const noexcept { return dim_; }
  const std::variant<Ball, Box>& shape() const noexcept { return shape_; }
  bool is_ball() const noexcept { return std::holds_alternative<Ball>(shape_); }

  /// Distance to the boundary; negative outside. For boxes, the minimum
  /// face distance.
  double boundary_distance(std::span<const double> x) const;
  /// Ball centre or box midpoint.
  std::vector<double> centre() const;
  /// Length used for default time-step scaling (radius or shortest side).
  double characteristic_length() const;

 private:
  SimDomain(int dim, std::variant<Ball, Box> shape) : dim_(dim), shape_(std::move(shape)) {}

  int dim_;
  std::variant<Ball, Box> shape_;
};

/// First Dirichlet eigenvalue of -Laplacian: j_{d/2-1,1}^2 / R^2 for a ball,
/// pi^2 sum 1/L_i^2 for a box.
double principal_eigenvalue(const SimDomain& domain);

inline constexpr int kDefaultChunks = 16;

struct SimConfig {
  SimDomain domain = SimDomain::ball(2, 1.0);
  std::vector<double> start;
  double dt = 1e-4;
  std::int64_t n_paths = 1000;
  /// Strictly increasing, >= 0; the last entry is the simulation horizon.
  std::vector<double> t_grid;
  std::uint64_t seed = 42;
  bool bridge_correction = true;
  /// Number of contiguous path ranges processed as parallel work items.
  int chunks = kDefaultChunks;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
};

/// Seed of path `index`: SplitMix64 finalizer applied to
/// seed + (index + 1) * 0x9E3779B97F4A7C15. Independent of chunking.
std::uint64_t derive_path_seed(std::uint64_t seed, std::uint64_t index);

/// FNV-1a 64 of the canonical text form of the configuration, as 16 hex digits.
std::string config_fingerprint(const SimConfig& config);

/// One exit time per path; +infinity for paths still inside at the horizon
/// t_grid.back(). Starting on the boundary gives 0. Deterministic in
/// (seed, config) and independent of `chunks`/`threads`.
std::vector<double> sample_exit_times(const SimConfig& config);

struct ExitTimeSummary {
  double mean = 0.0;          ///< over exited paths
  double standard_error = 0.0;
  std::int64_t exited = 0;
  std::int64_t censored = 0;
};

ExitTimeSummary summarize_exit_times(std::span<const double> samples);

struct TailEstimate {
  std::vector<double> t_grid;
  std::vector<double> survival;
  std::vector<double> ci_low;   ///< 95% Clopper-Pearson
  std::vector<double> ci_high;
  std::int64_t n_paths = 0;
  int dim = 0;
  std::string fingerprint;
};

/// Survival fractions from already-drawn samples.
TailEstimate survival_from_samples(const SimConfig& config, std::span<const double> samples);

/// Requires a start strictly inside the domain.
TailEstimate estimate_survival(const SimConfig& config);

/// Two-sided Clopper-Pearson interval for `successes` out of `trials`.
std::pair<double, double> clopper_pearson(std::int64_t successes, std::int64_t trials,
                                          double confidence = 0.95);

struct VBoundReport {
  bool pass = true;
  double epsilon = 1.0;
  VKind vkind = VKind::Vogt;
  double lambda = 0.0;
  std::vector<double> bound_curve;
  /// min over the grid of bound - ci_low; negative on failure.
  double worst_margin = 0.0;
  std::size_t worst_index = 0;
};

/// Compares each lower confidence limit with V(eps, dim) e^{-(1-eps) lambda t}.
VBoundReport check_vbound(const TailEstimate& estimate, const VFunction& v, double epsilon,
                          double lambda);

}  // namespace hotspots
