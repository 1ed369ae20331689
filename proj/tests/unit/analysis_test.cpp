#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "hughes/analysis.hpp"
#include "hughes/errors.hpp"
#include "hughes/godunov.hpp"
#include "hughes/turning.hpp"

namespace hughes {
namespace {

// Oracle: midpoint quadrature of |a - b| over [-1, 1].
double quadrature_l1(const PiecewiseConstantDensity& a, const PiecewiseConstantDensity& b) {
  const int n = 1000000;
  const double h = 2.0 / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + (i + 0.5) * h;
    s += std::abs(a(x) - b(x));
  }
  return s * h;
}

// Oracle: TV by enumerating the jumps of the zero-extended piece list.
double enumerated_tv(const std::vector<DensityPiece>& pieces) {
  double tv = 0.0, previous = 0.0, cursor = -1.0;
  for (const auto& p : pieces) {
    if (p.left > cursor) {
      tv += previous;
      previous = 0.0;
    }
    tv += std::abs(p.value - previous);
    previous = p.value;
    cursor = p.right;
  }
  return tv + previous;
}

TEST(L1Distance, Examples) {
  const PiecewiseConstantDensity half({-1, 1}, {0.5});
  const PiecewiseConstantDensity quarter({-1, 1}, {0.25});
  EXPECT_EQ(l1_distance(half, half), 0.0);
  EXPECT_NEAR(l1_distance(half, quarter), 0.5, 1e-15);
  EXPECT_NEAR(l1_distance(half, PiecewiseConstantDensity()), 1.0, 1e-15);
}

TEST(L1DistanceProperty, MatchesQuadratureOracle) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = testing::random_density(rng, 0.9);
    const auto b = testing::random_density(rng, 0.9);
    EXPECT_NEAR(l1_distance(a, b), quadrature_l1(a, b), 1e-6);
  }
}

TEST(L1DistanceProperty, IsAMetric) {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_density(rng, 0.9);
    const auto b = testing::random_density(rng, 0.9);
    const auto c = testing::random_density(rng, 0.9);
    EXPECT_DOUBLE_EQ(l1_distance(a, b), l1_distance(b, a));
    EXPECT_LE(l1_distance(a, c), l1_distance(a, b) + l1_distance(b, c) + 1e-14);
    EXPECT_GE(l1_distance(a, b), 0.0);
  }
}

TEST(TotalVariation, Examples) {
  EXPECT_NEAR(total_variation(PiecewiseConstantDensity({-1, 1}, {0.3})), 0.6, 1e-15);
  EXPECT_NEAR(total_variation(PiecewiseConstantDensity({-1, 0, 1}, {0.0, 0.7})), 1.4, 1e-15);
  const std::vector<DensityPiece> steps{{-0.8, -0.5, 0.8}, {-0.3, 0.3, 0.6}, {0.4, 0.75, 0.9}};
  EXPECT_NEAR(enumerated_tv(steps), 4.6, 1e-15);
  EXPECT_NEAR(total_variation(PiecewiseConstantDensity::from_pieces(steps)), 4.6, 1e-14);
  // Mass beyond the exits does not count.
  EXPECT_NEAR(total_variation(PiecewiseConstantDensity({-2, 2}, {0.3})), 0.6, 1e-15);
}

TEST(TotalVariationProperty, InsertingABreakpointLeavesItUnchanged) {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = testing::random_density(rng, 0.9);
    auto breaks = d.breakpoints();
    auto values = d.values();
    const std::size_t i = static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(values.size()) - 1));
    breaks.insert(breaks.begin() + static_cast<long>(i) + 1, 0.5 * (breaks[i] + breaks[i + 1]));
    values.insert(values.begin() + static_cast<long>(i), values[i]);
    EXPECT_NEAR(total_variation(PiecewiseConstantDensity(breaks, values)), total_variation(d), 1e-14);
  }
}

SnapshotSeries godunov_series(double t_end, std::size_t count) {
  GodunovConfig cfg;
  cfg.snapshot_times = uniform_times(0.0, t_end, count - 1);
  return run_godunov(ModelFunctions::linear_reciprocal(0.95), PiecewiseConstantDensity({-1, 0, 1}, {0.3, 0.7}), 50,
                     t_end, cfg);
}

TEST(Compare, IdenticalSeriesGiveZeros) {
  const auto s = godunov_series(0.5, 6);
  const auto report = compare_methods(s, s);
  ASSERT_EQ(report.times.size(), 6u);
  EXPECT_EQ(report.max_l1(), 0.0);
  EXPECT_EQ(report.max_xi_diff(), 0.0);
  std::ostringstream csv;
  report.write_csv(csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "t,l1_density,xi_godunov,xi_godunov,abs_xi_diff");
}

TEST(Compare, MismatchedGridsThrowButAlignmentResamples) {
  const auto fine = godunov_series(0.5, 11);
  auto coarse = fine;
  coarse.snapshots = {fine.snapshots[0], fine.snapshots[5], fine.snapshots[10]};
  EXPECT_THROW(compare_methods(coarse, fine), DomainError);
  const auto report = compare_aligned(coarse, fine);
  ASSERT_EQ(report.times.size(), 3u);
  EXPECT_EQ(report.max_l1(), 0.0);
  EXPECT_DOUBLE_EQ(report.times[1], 0.25);
}

TEST(ConvergenceStudy, RejectsTinyOrUnorderedResolutions) {
  const auto m = ModelFunctions::linear_constant(0.9);
  const PiecewiseConstantDensity d({-1, 1}, {0.4});
  EXPECT_THROW(convergence_study(m, d, {2, 8}, 0.5), DomainError);
  EXPECT_THROW(convergence_study(m, d, {16, 8}, 0.5), DomainError);
  EXPECT_THROW(convergence_study(m, d, {}, 0.5), DomainError);
}

TEST(ConvergenceStudy, ConstantCostSymmetricDatumConverges) {
  const auto m = ModelFunctions::linear_constant(0.9);
  const std::vector<DensityPiece> pieces{{-0.8, -0.2, 0.7}, {0.2, 0.8, 0.7}};
  const auto rows = convergence_study(m, PiecewiseConstantDensity::from_pieces(pieces), {16, 32, 64, 128}, 0.5);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_FALSE(rows.front().observed_order.has_value());
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LT(rows[k].l1_error, rows[k - 1].l1_error);
    ASSERT_TRUE(rows[k].observed_order.has_value());
    EXPECT_GT(*rows[k].observed_order, 0.0);
  }
}

TEST(ConvergenceStudy, SymmetricReciprocalSuiteIsNonIncreasing) {
  std::mt19937 rng(83);
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  for (int trial = 0; trial < 3; ++trial) {
    const auto rows = convergence_study(m, testing::random_even_density(rng, 0.8), {32, 64, 128, 256}, 0.5);
    for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LE(rows[k].l1_error, rows[k - 1].l1_error) << trial;
  }
}

}  // namespace
}  // namespace hughes
