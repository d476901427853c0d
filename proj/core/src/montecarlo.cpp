#include "hotspots/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "hotspots/error.hpp"
#include "hotspots/fingerprint.hpp"
#include "hotspots/zeros.hpp"

namespace hotspots {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Crossing probabilities below e^{-40} are treated as zero.
constexpr double kBridgeCutoff = 40.0;

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void validate(const SimConfig& c) {
  const int dim = c.domain.dim();
  if (static_cast<int>(c.start.size()) != dim) {
    fail(ErrorKind::OutOfDomain, "start point dimension does not match the domain");
  }
  for (double v : c.start) {
    if (!std::isfinite(v)) fail(ErrorKind::OutOfDomain, "start point must be finite");
  }
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) fail(ErrorKind::OutOfDomain, "dt must be > 0");
  if (c.n_paths < 1) fail(ErrorKind::OutOfDomain, "n_paths must be >= 1");
  if (c.chunks < 1) fail(ErrorKind::OutOfDomain, "chunks must be >= 1");
  if (c.threads < 0) fail(ErrorKind::OutOfDomain, "threads must be >= 0");
  if (c.t_grid.empty()) fail(ErrorKind::OutOfDomain, "t_grid must not be empty");
  if (!(c.t_grid.front() >= 0.0)) fail(ErrorKind::OutOfDomain, "t_grid entries must be >= 0");
  double min_gap = kInf;
  for (std::size_t i = 1; i < c.t_grid.size(); ++i) {
    const double gap = c.t_grid[i] - c.t_grid[i - 1];
    if (!(gap > 0.0)) fail(ErrorKind::OutOfDomain, "t_grid must be strictly increasing");
    min_gap = std::min(min_gap, gap);
  }
  if (c.dt > min_gap / 10.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << c.dt << " exceeds min(t_grid spacing)/10 = " << min_gap / 10.0;
    fail(ErrorKind::OutOfDomain, os.str());
  }
  if (c.domain.boundary_distance(c.start) < 0.0) {
    fail(ErrorKind::OutOfDomain, "start point lies outside the domain");
  }
}

// Probability that a Brownian bridge with variance 2 per unit time between
// points at distances d0, d1 > 0 from a half-space boundary crosses it
// within dt: exp(-2 d0 d1 / (2 dt)).
double half_space_crossing(double d0, double d1, double dt) {
  const double exponent = d0 * d1 / dt;
  return exponent > kBridgeCutoff ? 0.0 : std::exp(-exponent);
}

class PathSimulator {
 public:
  PathSimulator(const SimConfig& config)
      : c_(config),
        sigma_(std::sqrt(2.0 * config.dt)),
        horizon_steps_(static_cast<std::int64_t>(std::ceil(config.t_grid.back() / config.dt - 1e-9))),
        x_(config.start.size()),
        prev_(config.start.size()) {}

  double run(std::uint64_t path_seed) {
    if (c_.domain.boundary_distance(c_.start) <= 0.0) return 0.0;
    std::mt19937_64 rng(path_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::copy(c_.start.begin(), c_.start.end(), x_.begin());
    for (std::int64_t step = 0; step < horizon_steps_; ++step) {
      prev_ = x_;
      for (double& xi : x_) xi += sigma_ * normal(rng);
      const double t_next = static_cast<double>(step + 1) * c_.dt;
      if (c_.domain.boundary_distance(x_) <= 0.0) return t_next;
      if (c_.bridge_correction) {
        const double p_cross = crossing_probability();
        if (p_cross > 0.0 && uniform(rng) < p_cross) return t_next;
      }
    }
    return kInf;
  }

 private:
  double crossing_probability() const {
    if (const auto* ball = std::get_if<Ball>(&c_.domain.shape())) {
      return half_space_crossing(ball->radius - norm(prev_), ball->radius - norm(x_), c_.dt);
    }
    // Faces treated independently.
    const auto& sides = std::get<Box>(c_.domain.shape()).sides;
    double survive = 1.0;
    for (std::size_t i = 0; i < sides.size(); ++i) {
      survive *= 1.0 - half_space_crossing(prev_[i], x_[i], c_.dt);
      survive *= 1.0 - half_space_crossing(sides[i] - prev_[i], sides[i] - x_[i], c_.dt);
    }
    return 1.0 - survive;
  }

  static double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
  }

  const SimConfig& c_;
  double sigma_;
  std::int64_t horizon_steps_;
  std::vector<double> x_;
  std::vector<double> prev_;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SimDomain SimDomain::ball(int dim, double radius) {
  if (dim < 1) fail(ErrorKind::OutOfDomain, "ball dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail(ErrorKind::OutOfDomain, "ball radius must be finite and > 0");
  }
  return SimDomain(dim, Ball{radius});
}

SimDomain SimDomain::box(std::vector<double> sides) {
  if (sides.empty()) fail(ErrorKind::OutOfDomain, "box needs at least one side");
  for (double s : sides) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      fail(ErrorKind::OutOfDomain, "box sides must be finite and > 0");
    }
  }
  const int dim = static_cast<int>(sides.size());
  return SimDomain(dim, Box{std::move(sides)});
}

double SimDomain::boundary_distance(std::span<const double> x) const {
  if (const auto* ball = std::get_if<Ball>(&shape_)) {
    double s = 0.0;
    for (double e : x) s += e * e;
    return ball->radius - std::sqrt(s);
  }
  const auto& sides = std::get<Box>(shape_).sides;
  double d = kInf;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    d = std::min({d, x[i], sides[i] - x[i]});
  }
  return d;
}

std::vector<double> SimDomain::centre() const {
  if (is_ball()) return std::vector<double>(static_cast<std::size_t>(dim_), 0.0);
  std::vector<double> c = std::get<Box>(shape_).sides;
  for (double& v : c) v *= 0.5;
  return c;
}

double SimDomain::characteristic_length() const {
  if (const auto* ball = std::get_if<Ball>(&shape_)) return ball->radius;
  const auto& sides = std::get<Box>(shape_).sides;
  return *std::min_element(sides.begin(), sides.end());
}

double principal_eigenvalue(const SimDomain& domain) {
  if (const auto* ball = std::get_if<Ball>(&domain.shape())) {
    const double r2 = ball->radius * ball->radius;
    if (domain.dim() == 1) {
      // Interval (-R, R): j_{-1/2,1} = pi/2.
      return std::numbers::pi * std::numbers::pi / 4.0 / r2;
    }
    const BesselZeroRecord j = first_bessel_zero(0.5 * domain.dim() - 1.0);
    return j.value * j.value / r2;
  }
  double sum = 0.0;
  for (double l : std::get<Box>(domain.shape()).sides) sum += 1.0 / (l * l);
  return std::numbers::pi * std::numbers::pi * sum;
}

std::uint64_t derive_path_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_mix(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

std::string config_fingerprint(const SimConfig& c) {
  std::ostringstream os;
  if (const auto* ball = std::get_if<Ball>(&c.domain.shape())) {
    os << "shape=ball;dim=" << c.domain.dim() << ";radius=" << format_double(ball->radius);
  } else {
    os << "shape=box;dim=" << c.domain.dim() << ";sides=";
    for (double s : std::get<Box>(c.domain.shape()).sides) os << format_double(s) << ',';
  }
  os << ";start=";
  for (double s : c.start) os << format_double(s) << ',';
  os << ";dt=" << format_double(c.dt) << ";n_paths=" << c.n_paths << ";t_grid=";
  for (double t : c.t_grid) os << format_double(t) << ',';
  os << ";seed=" << c.seed << ";bridge=" << (c.bridge_correction ? 1 : 0)
     << ";chunks=" << c.chunks;
  return fnv1a64_hex(os.str());
}

std::vector<double> sample_exit_times(const SimConfig& config) {
  validate(config);
  const auto n = static_cast<std::size_t>(config.n_paths);
  std::vector<double> samples(n);
  const auto chunks = static_cast<std::size_t>(std::min<std::int64_t>(config.chunks, config.n_paths));
  const std::size_t per_chunk = (n + chunks - 1) / chunks;

  std::atomic<std::size_t> next_chunk{0};
  auto worker = [&] {
    PathSimulator sim(config);
    for (std::size_t chunk = next_chunk++; chunk < chunks; chunk = next_chunk++) {
      const std::size_t begin = chunk * per_chunk;
      const std::size_t end = std::min(n, begin + per_chunk);
      for (std::size_t i = begin; i < end; ++i) {
        samples[i] = sim.run(derive_path_seed(config.seed, i));
      }
    }
  };

  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return samples;
}

ExitTimeSummary summarize_exit_times(std::span<const double> samples) {
  ExitTimeSummary s;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double t : samples) {
    if (std::isinf(t)) {
      ++s.censored;
      continue;
    }
    ++s.exited;
    sum += t;
    sum_sq += t * t;
  }
  if (s.exited > 0) {
    const double n = static_cast<double>(s.exited);
    s.mean = sum / n;
    const double var = s.exited > 1 ? std::max(0.0, (sum_sq - n * s.mean * s.mean) / (n - 1.0)) : 0.0;
    s.standard_error = std::sqrt(var / n);
  }
  return s;
}

std::pair<double, double> clopper_pearson(std::int64_t successes, std::int64_t trials,
                                          double confidence) {
  if (trials < 1 || successes < 0 || successes > trials) {
    fail(ErrorKind::OutOfDomain, "clopper_pearson needs 0 <= successes <= trials, trials >= 1");
  }
  const double alpha = 1.0 - confidence;
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  const double lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
  const double hi =
      successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
  return {lo, hi};
}

TailEstimate survival_from_samples(const SimConfig& config, std::span<const double> samples) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  TailEstimate est;
  est.t_grid = config.t_grid;
  est.n_paths = static_cast<std::int64_t>(samples.size());
  est.dim = config.domain.dim();
  est.fingerprint = config_fingerprint(config);
  for (double t : config.t_grid) {
    const auto survivors =
        static_cast<std::int64_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
    const auto [lo, hi] = clopper_pearson(survivors, est.n_paths);
    est.survival.push_back(static_cast<double>(survivors) / static_cast<double>(est.n_paths));
    est.ci_low.push_back(lo);
    est.ci_high.push_back(hi);
  }
  return est;
}

TailEstimate estimate_survival(const SimConfig& config) {
  validate(config);
  if (!(config.domain.boundary_distance(config.start) > 0.0)) {
    fail(ErrorKind::OutOfDomain, "tail estimation needs a start strictly inside the domain");
  }
  const std::vector<double> samples = sample_exit_times(config);
  return survival_from_samples(config, samples);
}

VBoundReport check_vbound(const TailEstimate& estimate, const VFunction& v, double epsilon,
                          double lambda) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(ErrorKind::OutOfDomain, "check_vbound: epsilon must lie in (0, 1]");
  }
  VBoundReport report;
  report.epsilon = epsilon;
  report.vkind = v.kind();
  report.lambda = lambda;
  const double lv = v.log_value(epsilon, estimate.dim);
  report.worst_margin = kInf;
  for (std::size_t i = 0; i < estimate.t_grid.size(); ++i) {
    const double bound = std::exp(lv - (1.0 - epsilon) * lambda * estimate.t_grid[i]);
    report.bound_curve.push_back(bound);
    const double margin = bound - estimate.ci_low[i];
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_index = i;
    }
  }
  report.pass = report.worst_margin >= 0.0;
  return report;
}

}  // namespace hotspots
