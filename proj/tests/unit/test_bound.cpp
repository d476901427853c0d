#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hotspots/bound.hpp"
#include "hotspots/error.hpp"

namespace hotspots {
namespace {

const VFunction kVogt = VFunction::vogt();
const VFunction kImproved = VFunction::improved_vogt();

// Minimum of a -> B(eps, a) over a uniform grid on [0, a_max].
double grid_min_over_a(std::int64_t d, double r, const VFunction& v, double eps, double a_max,
                       int points) {
  double best = INFINITY;
  for (int i = 0; i <= points; ++i) {
    const double a = a_max * i / points;
    best = std::min(best, bound_value(d, r, v, eps, a));
  }
  return best;
}

BoundQuery published_query(int d) {
  BoundQuery q;
  q.d = d;
  q.ratio = round_ratio_up(ratio_upper_bound(d, RatioKind::BesselExact));
  q.vfunction = kImproved;
  return q;
}

TEST(BoundValue, PublishedTableRows) {
  EXPECT_NEAR(bound_value(2, 0.5862, kImproved, 0.0929, 1.0081), 5.1043, 5e-4);
  EXPECT_NEAR(bound_value(10, 0.1939, kImproved, 0.3359, 2.5846), 2.3314, 5e-4);
}

TEST(BoundValue, AtZeroA) {
  for (auto [d, r, eps] : {std::tuple{2, 0.5862, 0.2}, std::tuple{50, 0.08, 0.6}}) {
    const double lv = kVogt.log_value(eps, d);
    EXPECT_NEAR(bound_value(d, r, kVogt, eps, 0.0), 1.0 + r * std::exp(lv) / (1.0 - eps - r),
                1e-13);
  }
}

TEST(BoundValue, GreaterThanOneEverywhere) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const int d = 2 + static_cast<int>(u(rng) * 199);
    const double r = 0.01 + 0.9 * u(rng);
    const double eps = (1.0 - r) * (1e-6 + (1.0 - 2e-6) * u(rng));
    const double a = 50.0 * u(rng);
    EXPECT_GT(bound_value(d, r, i % 2 ? kVogt : kImproved, eps, a), 1.0);
  }
}

TEST(BoundValue, NoOverflowInLogSpace) {
  // Each term separately overflows a double, the sum is finite.
  const double b = bound_value(200, 0.01, kVogt, 1e-6, 0.0);
  EXPECT_TRUE(std::isfinite(b));
  EXPECT_GT(b, 1.0);
  EXPECT_TRUE(std::isfinite(bound_value(200, 0.01, kVogt, 1e-6, 600.0)));
}

TEST(BoundValue, RejectsPointsOutsideRegion) {
  EXPECT_THROW(bound_value(2, 0.5, kVogt, 0.5, 1.0), Error);
  EXPECT_THROW(bound_value(2, 0.5, kVogt, 0.0, 1.0), Error);
  EXPECT_THROW(bound_value(2, 0.5, kVogt, 0.2, -1.0), Error);
  EXPECT_THROW(bound_value(2, 1.0, kVogt, 0.2, 1.0), Error);
}

TEST(OptimalA, ZeroWhenVIsOne) { EXPECT_EQ(optimal_a(0.3, 0.2, 0.0), 0.0); }

TEST(OptimalA, MatchesDenseGridOnPublishedRow) {
  const double r = 0.5862, eps = 0.0929;
  const double a = optimal_a(eps, r, kImproved.log_value(eps, 2));
  const double at_star = bound_value(2, r, kImproved, eps, a);
  const double grid = grid_min_over_a(2, r, kImproved, eps, 20.0, 200000);
  EXPECT_LE(at_star, 5.1043 + 5e-4);
  EXPECT_LE(at_star, grid * (1.0 + 1e-14));
  EXPECT_LE(grid - at_star, 1e-6 * at_star);
}

TEST(OptimalA, StationaryByFiniteDifference) {
  for (auto [d, r, eps] : {std::tuple{2, 0.5862, 0.0929}, std::tuple{10, 0.1939, 0.3359},
                           std::tuple{100, 0.0322, 0.6894}, std::tuple{37, 0.2, 0.05}}) {
    const double a = optimal_a(eps, r, kImproved.log_value(eps, d));
    const double h = 1e-5;
    const double slope =
        (bound_value(d, r, kImproved, eps, a + h) - bound_value(d, r, kImproved, eps, a - h)) /
        (2.0 * h);
    EXPECT_LE(std::fabs(slope), 1e-6) << "d=" << d;
  }
}

TEST(OptimalA, ReducedObjectiveIdentity) {
  for (auto [d, r, eps] : {std::tuple{3, 0.4391, 0.15}, std::tuple{150, 0.03, 0.7}}) {
    const double lv = kVogt.log_value(eps, d);
    const double a = optimal_a(eps, r, lv);
    EXPECT_NEAR(std::log(bound_value(d, r, kVogt, eps, a)), log_reduced_bound(eps, r, lv), 1e-13);
    const double closed = std::pow(std::exp(lv), r / (1.0 - eps)) * (1.0 - eps) / (1.0 - eps - r);
    EXPECT_NEAR(bound_value(d, r, kVogt, eps, a), closed, 1e-12 * closed);
  }
}

TEST(OptimalA, RandomizedAgainstDenseGrid) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + static_cast<int>(u(rng) * 199);
    const double r = ratio_upper_bound(d, RatioKind::ClosedForm).value;
    const double eps = (1.0 - r) * (0.02 + 0.96 * u(rng));
    const VFunction& v = i % 2 ? kVogt : kImproved;
    const double a = optimal_a(eps, r, v.log_value(eps, d));
    const double at_star = bound_value(d, r, v, eps, a);
    const double grid = grid_min_over_a(d, r, v, eps, 3.0 * a + 1.0, 200000);
    EXPECT_LE(at_star, grid * (1.0 + 1e-14)) << "d=" << d << " eps=" << eps;
    EXPECT_LE(grid - at_star, 1e-6 * at_star) << "d=" << d << " eps=" << eps;
  }
}

TEST(OptimizeBound, PublishedTableRows) {
  const struct {
    int d;
    double eps, a, bound;
  } rows[] = {{2, 0.0929, 1.0081, 5.1043},
              {3, 0.1485, 1.2205, 3.5288},
              {4, 0.1903, 1.4325, 3.0200},
              {10, 0.3359, 2.5846, 2.3314},
              {100, 0.6894, 16.219, 1.8809}};
  for (const auto& row : rows) {
    const BoundResult res = optimize_bound(published_query(row.d));
    EXPECT_NEAR(res.bound, row.bound, 1e-3) << "d=" << row.d;
    EXPECT_NEAR(res.epsilon_star, row.eps, 5e-3) << "d=" << row.d;
    EXPECT_NEAR(res.a_star, row.a, 5e-3) << "d=" << row.d;
    EXPECT_EQ(res.vkind, VKind::ImprovedVogt);
    EXPECT_GT(res.evaluations, 0);
  }
}

TEST(OptimizeBound, ResultIsConsistent) {
  const BoundQuery q = published_query(10);
  const BoundResult res = optimize_bound(q);
  EXPECT_GT(res.bound, 1.0);
  EXPECT_GT(res.epsilon_star, 0.0);
  EXPECT_LT(res.epsilon_star, 1.0 - res.r);
  EXPECT_GE(res.a_star, 0.0);
  const double recomputed = bound_value(q.d, res.r, q.vfunction, res.epsilon_star, res.a_star);
  EXPECT_NEAR(res.bound, recomputed, 1e-14 * recomputed);
}

TEST(OptimizeBound, Deterministic) {
  const BoundResult a = optimize_bound(published_query(4));
  const BoundResult b = optimize_bound(published_query(4));
  EXPECT_EQ(a.bound, b.bound);
  EXPECT_EQ(a.epsilon_star, b.epsilon_star);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(OptimizeBound, PassesOptimalityAudit) {
  for (int d : {2, 3, 7, 25, 100, 200}) {
    for (RatioKind kind : {RatioKind::BesselExact, RatioKind::ClosedForm}) {
      BoundQuery q;
      q.d = d;
      q.ratio = ratio_upper_bound(d, kind);
      q.vfunction = d % 2 ? kVogt : kImproved;
      const BoundResult res = optimize_bound(q);
      EXPECT_LE(optimality_audit(q, res), 1e-9) << "d=" << d;
    }
  }
}

TEST(OptimizeBound, TableIsDecreasing) {
  double previous = INFINITY;
  for (int d : {2, 3, 4, 10, 100}) {
    const double b = optimize_bound(published_query(d)).bound;
    EXPECT_LT(b, previous) << "d=" << d;
    previous = b;
  }
}

TEST(OptimizeBound, ImprovedNeverWorseThanVogt) {
  for (int d = 2; d <= 200; ++d) {
    BoundQuery q;
    q.d = d;
    q.ratio = ratio_upper_bound(d, RatioKind::ClosedForm);
    q.vfunction = kImproved;
    const double improved = optimize_bound(q).bound;
    q.vfunction = kVogt;
    const double vogt = optimize_bound(q).bound;
    EXPECT_LE(improved, vogt) << "d=" << d;
  }
}

TEST(OptimizeBound, CustomVFunctionRespectsTableRange) {
  BoundQuery q;
  q.d = 5;
  q.ratio = custom_ratio(5, 0.3);
  q.vfunction = VFunction::custom(CustomVTable({0.2, 0.4, 0.6}, {1.0, 0.5, 0.3}));
  const BoundResult res = optimize_bound(q);
  EXPECT_GE(res.epsilon_star, 0.2);
  EXPECT_LE(res.epsilon_star, 0.6);
  EXPECT_LE(optimality_audit(q, res), 1e-9);
}

TEST(OptimizeBound, RejectsBadQueries) {
  BoundQuery q = published_query(3);
  q.tolerance = 0.5;
  EXPECT_THROW(optimize_bound(q), Error);
  q.tolerance = 1e-13;
  EXPECT_THROW(optimize_bound(q), Error);
  q = published_query(3);
  q.vfunction = VFunction::custom(CustomVTable({0.8, 0.9}, {1.0, 0.5}));
  try {
    optimize_bound(q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
  }
}

double finite_b_limit(std::int64_t d, double r, const VFunction& v, const FiniteBParams& p) {
  const double rho = p.rho_epsilon;
  return std::exp(r * p.a) + r * std::exp(v.log_value(p.epsilon, d)) / rho * std::exp(-rho * p.a);
}

TEST(FiniteB, ConvergesToGeneralFormula) {
  const FiniteBParams p = FiniteBParams::make(0.0929, 0.0929, 1.0081, 50.0, 0.5862);
  const double limit = bound_value(2, 0.5862, kImproved, 0.0929, 1.0081);
  EXPECT_NEAR(finite_b_bound(2, 0.5862, kImproved, p), limit, 1e-6);
  EXPECT_NEAR(limit, finite_b_limit(2, 0.5862, kImproved, p), 1e-13 * limit);
  EXPECT_NEAR(finite_b_bound(2, 0.5862, kImproved, p), 5.1043, 5e-4);
}

TEST(FiniteB, LargeBWithinTolerance) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const int d = 2 + static_cast<int>(u(rng) * 199);
    const double r = ratio_upper_bound(d, RatioKind::ClosedForm).value;
    const double delta = (1.0 - r) * (0.05 + 0.9 * u(rng));
    const double eps = (1.0 - r) * (0.05 + 0.9 * u(rng));
    const double a = 10.0 * u(rng);
    const VFunction& v = i % 2 ? kVogt : kImproved;
    // Both discarded tails V(.) e^{-rho b} are at most e^{-40}.
    const double rho_delta = 1.0 - delta - r;
    const double rho_eps = 1.0 - eps - r;
    const double b = std::max({a, (40.0 + v.log_value(delta, d)) / rho_delta,
                               (40.0 + v.log_value(eps, d)) / rho_eps});
    const FiniteBParams p = FiniteBParams::make(delta, eps, a, b, r);
    const double limit = bound_value(d, r, v, eps, a);
    EXPECT_NEAR(finite_b_bound(d, r, v, p), limit, 1e-8 * limit) << "i=" << i;
  }
}

TEST(FiniteB, MatchesPlainArithmetic) {
  const FiniteBParams p = FiniteBParams::make(0.3, 0.2, 1.5, 12.0, 0.25);
  const FiniteBTerms t = finite_b_terms(4, 0.25, kVogt, p);
  ASSERT_GT(t.denominator, 0.0);
  EXPECT_NEAR(finite_b_bound(4, 0.25, kVogt, p), t.numerator / t.denominator,
              1e-13 * t.numerator / t.denominator);
}

TEST(FiniteB, BEqualsAWithEqualParameters) {
  const double r = 0.2, eps = 0.3, a = 8.0;
  const FiniteBParams p = FiniteBParams::make(eps, eps, a, a, r);
  const FiniteBTerms t = finite_b_terms(6, r, kVogt, p);
  const double expected = std::exp(r * a) - std::exp(kVogt.log_value(eps, 6)) * std::exp(-p.rho_epsilon * a);
  EXPECT_NEAR(t.numerator, expected, 1e-12 * std::fabs(expected));
  EXPECT_NEAR(finite_b_bound(6, r, kVogt, p), t.numerator / t.denominator,
              1e-12 * t.numerator / t.denominator);
}

TEST(FiniteB, ConstraintViolation) {
  const FiniteBParams p = FiniteBParams::make(0.1, 0.1, 0.0, 0.1, 0.5);
  try {
    finite_b_bound(10, 0.5, kVogt, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstraintViolated);
  }
}

TEST(FiniteB, RejectsBadParameters) {
  EXPECT_THROW(FiniteBParams::make(0.6, 0.1, 0.0, 1.0, 0.5), Error);
  EXPECT_THROW(FiniteBParams::make(0.1, 0.1, 2.0, 1.0, 0.5), Error);
  EXPECT_THROW(FiniteBParams::make(0.1, 0.1, -1.0, 1.0, 0.5), Error);
  EXPECT_THROW(FiniteBParams::make(0.1, 0.1, 0.0, INFINITY, 0.5), Error);
}

}  // namespace
}  // namespace hotspots
