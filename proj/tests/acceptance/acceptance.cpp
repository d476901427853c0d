// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "hotspots/asymptotic.hpp"
#include "hotspots/bound.hpp"
#include "hotspots/ratio.hpp"
#include "hotspots/zeros.hpp"

namespace {

using namespace hotspots;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string run_cli(std::vector<std::string> args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome table_reproduction() {
  struct Row {
    int d;
    double p2, j2, r, eps, a, bound;
  };
  const Row published[] = {{2, 3.3900, 5.7831, 0.5862, 0.0929, 1.0081, 5.1043},
                           {3, 4.3330, 9.8696, 0.4391, 0.1485, 1.2205, 3.5288},
                           {4, 5.2896, 14.681, 0.3604, 0.1903, 1.4325, 3.0200},
                           {10, 11.160, 57.582, 0.1939, 0.3359, 2.5846, 2.3314},
                           {100, 101.02, 3144.1, 0.0322, 0.6894, 16.219, 1.8809}};
  const auto start = Clock::now();
  int code = 0;
  const std::string out = run_cli({"table", "--format", "json"}, code);
  const double elapsed = seconds_since(start);
  if (code != 0) return {false, "table exited with status " + std::to_string(code)};
  const json rows = json::parse(out)["rows"];
  int ok = 0;
  double worst = 0.0;
  std::string misses;
  for (std::size_t i = 0; i < 5; ++i) {
    const Row& p = published[i];
    const json& row = rows.at(i);
    const std::pair<const char*, std::pair<double, double>> cells[] = {
        {"p_squared", {p.p2, 1e-3}}, {"j_squared", {p.j2, 1e-3}}, {"r", {p.r, 1e-3}},
        {"bound", {p.bound, 1e-3}},  {"epsilon", {p.eps, 5e-3}},  {"a", {p.a, 5e-3}}};
    for (const auto& [key, target] : cells) {
      const double got = row.at(key).get<double>();
      const double err = std::fabs(got - target.first);
      worst = std::max(worst, err / target.second);
      if (err <= target.second) {
        ++ok;
      } else {
        misses += " d=" + std::to_string(p.d) + ":" + key;
      }
    }
  }
  const bool pass = ok == 30 && elapsed < 10.0;
  return {pass, std::to_string(ok) + "/30 cells within tolerance (worst " + fmt("%.2f", worst) +
                    " of allowance), " + fmt("%.3f", elapsed) + " s" + misses};
}

Outcome ratio_audit() {
  int failures = 0;
  std::string first;
  for (int d = 2; d <= 200; ++d) {
    const RatioBoundSpec bessel = ratio_upper_bound(d, RatioKind::BesselExact);
    const double closed = (4.0 * d + 8.0) / (d * (d + 8.0));
    bool ok = bessel.value < closed && closed < 1.0;
    if (d >= 5) ok = ok && closed < 4.0 / d;
    ok = ok && bessel.p_root->value_squared_up < d + 2.0;
    ok = ok && bessel.j_zero->value_squared_down > d * (d + 8.0) / 4.0;
    if (!ok) {
      ++failures;
      if (first.empty()) first = " first failure at d=" + std::to_string(d);
    }
  }
  return {failures == 0, "199 dimensions, " + std::to_string(failures) + " violations" + first};
}

Outcome optimizer_soundness() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_audit = -std::numeric_limits<double>::infinity();
  double worst_reduction = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + static_cast<int>(u(rng) * 199.0);
    RatioBoundSpec ratio;
    switch (static_cast<int>(u(rng) * 4.0)) {
      case 0:
        ratio = ratio_upper_bound(d, RatioKind::BesselExact);
        break;
      case 1:
        ratio = ratio_upper_bound(d, RatioKind::ClosedForm);
        break;
      case 2:
        ratio = d >= 5 ? ratio_upper_bound(d, RatioKind::AsymptoticFourOverD)
                       : ratio_upper_bound(d, RatioKind::ClosedForm);
        break;
      default:
        ratio = custom_ratio(d, 0.02 + 0.9 * u(rng));
    }
    BoundQuery q;
    q.d = d;
    q.ratio = ratio;
    q.vfunction = u(rng) < 0.5 ? VFunction::vogt() : VFunction::improved_vogt();
    const BoundResult res = optimize_bound(q);
    worst_audit = std::max(worst_audit, optimality_audit(q, res, 100));

    // Inner reduction against a dense 1-D grid in a at the optimizer's epsilon.
    const double eps = res.epsilon_star;
    const double lv = q.vfunction.log_value(eps, d);
    const double a_star = optimal_a(eps, res.r, lv);
    const double at_star = bound_value(d, res.r, q.vfunction, eps, a_star);
    const double a_max = 3.0 * a_star + 1.0;
    double grid_min = std::numeric_limits<double>::infinity();
    constexpr int kPoints = 200000;
    for (int k = 0; k <= kPoints; ++k) {
      grid_min = std::min(grid_min, bound_value(d, res.r, q.vfunction, eps, a_max * k / kPoints));
    }
    worst_reduction = std::max(worst_reduction, std::fabs(grid_min - at_star) / at_star);
  }
  const bool pass = worst_audit <= 1e-9 && worst_reduction <= 1e-6;
  return {pass, "20 configs; max(bound - grid probe) = " + fmt("%.3e", worst_audit) +
                    ", max relative optimal_a gap = " + fmt("%.3e", worst_reduction)};
}

Outcome finite_b_consistency() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  double min_rho_b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const int d = 2 + static_cast<int>(u(rng) * 199.0);
    const double r = ratio_upper_bound(d, u(rng) < 0.5 ? RatioKind::BesselExact : RatioKind::ClosedForm).value;
    const VFunction v = u(rng) < 0.5 ? VFunction::vogt() : VFunction::improved_vogt();
    const double delta = (1.0 - r) * (0.05 + 0.9 * u(rng));
    const double eps = (1.0 - r) * (0.05 + 0.9 * u(rng));
    const double a = 10.0 * u(rng);
    // Both discarded tails V(.) e^{-rho b} are at most e^{-40}.
    const double rho_d = 1.0 - delta - r;
    const double rho_e = 1.0 - eps - r;
    const double margin = 40.0 + 20.0 * u(rng);
    const double b = std::max({a, (margin + v.log_value(delta, d)) / rho_d,
                               (margin + v.log_value(eps, d)) / rho_e});
    const FiniteBParams p = FiniteBParams::make(delta, eps, a, b, r);
    min_rho_b = std::min(min_rho_b, p.rho_delta * b);
    const double limit = bound_value(d, r, v, eps, a);
    const double value = finite_b_bound(d, r, v, p);
    worst = std::max(worst, std::fabs(value - limit) / limit);
  }
  return {worst <= 1e-8 && min_rho_b >= 40.0,
          "10 parameter sets, min rho(delta)*b = " + fmt("%.1f", min_rho_b) +
              ", max relative gap = " + fmt("%.3e", worst)};
}

Outcome asymptotic_limit() {
  const AsymptoticParams p;  // c = 1, alpha = -1/2, k = 1/8
  const double sqrt_e = std::exp(0.5);
  const std::int64_t dmin = min_feasible_dimension(p);
  bool above = true;
  std::int64_t checked = 0;
  for (std::int64_t d = dmin; d < dmin + 100000; ++d, ++checked) {
    above = above && asymptotic_bound(p, d) > sqrt_e;
  }
  for (std::int64_t d : geometric_dims(dmin, kMaxVogtDim, 2000)) {
    above = above && asymptotic_bound(p, d) > sqrt_e;
    ++checked;
  }
  const double at_1e8 = asymptotic_bound(p, 100'000'000);
  const double excess = (at_1e8 - sqrt_e) / sqrt_e;
  double worst_factor = 0.0;
  for (std::int64_t d : geometric_dims(dmin, kMaxVogtDim, 500)) {
    const double first = std::exp(4.0 / static_cast<double>(d) * a_d(p, d));
    worst_factor = std::max(worst_factor, std::fabs(first - sqrt_e) / sqrt_e);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const bool pass = above && excess >= 0.0 && excess < 0.01 && worst_factor <= 2.0 * eps;
  return {pass, "min feasible d = " + std::to_string(dmin) + ", " + std::to_string(checked) +
                    " dimensions above sqrt(e); bound(1e8) = " + fmt("%.10f", at_1e8) +
                    " (relative excess " + fmt("%.3e", excess) + "); first factor within " +
                    fmt("%.1f", worst_factor / eps) + " ulp"};
}

Outcome monte_carlo_physics() {
  const auto start = Clock::now();
  int code = 0;
  const std::string out = run_cli({"verify-vbound", "--shape", "ball", "--radius", "1", "--dim",
                                   "2", "--paths", "100000", "--dt", "1e-4", "--epsilon",
                                   "0.25,0.5,0.75", "--vfunction", "vogt,improved", "--seed", "42",
                                   "--format", "json"},
                                  code);
  const double elapsed = seconds_since(start);
  if (out.empty()) return {false, "verify-vbound produced no output (status " + std::to_string(code) + ")"};
  const json j = json::parse(out);
  const double mean = j["exit_time"]["mean"].get<double>();
  const double se = j["exit_time"]["standard_error"].get<double>();
  const auto censored = j["exit_time"]["censored"].get<std::int64_t>();
  const bool mean_ok = censored == 0 && std::fabs(mean - 0.25) <= 3.0 * se;
  const auto survival = j["survival"].get<std::vector<double>>();
  bool monotone = true;
  for (std::size_t i = 1; i < survival.size(); ++i) monotone = monotone && survival[i] <= survival[i - 1];
  int passed = 0;
  for (const auto& c : j["checks"]) passed += c["pass"].get<bool>() ? 1 : 0;
  const bool pass = mean_ok && monotone && passed == 6 && code == 0 && elapsed < 120.0;
  return {pass, "mean exit time " + fmt("%.5f", mean) + " +- " + fmt("%.5f", se) + " (" +
                    fmt("%.2f", std::fabs(mean - 0.25) / se) + " SE from 0.25), survival " +
                    (monotone ? "nonincreasing" : "NOT monotone") + ", " + std::to_string(passed) +
                    "/6 V-bound checks pass, " + fmt("%.1f", elapsed) + " s"};
}

Outcome determinism() {
  const std::vector<std::string> base = {"verify-vbound", "--paths", "20000", "--dt", "1e-4",
                                         "--epsilon", "0.5", "--seed", "12345", "--chunks", "16",
                                         "--format", "json"};
  int c1 = 0, c2 = 0, c3 = 0;
  const std::string first = run_cli(base, c1);
  const std::string second = run_cli(base, c2);
  std::vector<std::string> threaded = base;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const std::string third = run_cli(threaded, c3);
  const bool pass = !first.empty() && first == second && first == third;
  return {pass, std::to_string(first.size()) + "-byte JSON, repeat run " +
                    (first == second ? "identical" : "DIFFERENT") + ", 3-thread run " +
                    (first == third ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 table reproduction", table_reproduction},
      {"2 ratio and root inequalities, d = 2..200", ratio_audit},
      {"3 optimizer soundness", optimizer_soundness},
      {"4 finite-b consistency", finite_b_consistency},
      {"5 asymptotic limit", asymptotic_limit},
      {"6 Monte Carlo physics", monte_carlo_physics},
      {"7 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
