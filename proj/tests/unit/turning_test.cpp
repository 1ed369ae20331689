#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "hughes/atomize.hpp"
#include "hughes/errors.hpp"
#include "hughes/ftl.hpp"
#include "hughes/turning.hpp"

namespace hughes {
namespace {

// Oracle: plain bisection on the exact left-minus-right cost integral, built
// from piece overlaps (vacuum costs 1) instead of prefix sums.
double bisection_turning_point(const ModelFunctions& m, const PiecewiseConstantDensity& d) {
  auto cost_integral = [&](double a, double b) {
    double covered = 0.0, total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double lo = std::max(a, d.breakpoints()[i]);
      const double hi = std::min(b, d.breakpoints()[i + 1]);
      if (hi > lo) {
        covered += hi - lo;
        total += (hi - lo) * m.cost(d.values()[i]);
      }
    }
    return total + (b - a - covered);
  };
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cost_integral(-1.0, mid) < cost_integral(mid, 1.0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(TurningPoint, VacuumAndConstantDataSitAtTheCentre) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  EXPECT_NEAR(solve_turning_point(m, PiecewiseConstantDensity()).xi, 0.0, 1e-15);
  EXPECT_NEAR(solve_turning_point(m, PiecewiseConstantDensity({-1, 1}, {0.6})).xi, 0.0, 1e-15);
}

TEST(TurningPoint, RiemannDataMatchClosedForm) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  struct Case {
    double lo, hi, expected;
  };
  for (const auto& c : {Case{0.45, 0.55, 1.0 / 11.0}, Case{0.3, 0.7, 2.0 / 7.0}, Case{0.1, 0.9, 4.0 / 9.0}}) {
    const PiecewiseConstantDensity d({-1, 0, 1}, {c.lo, c.hi});
    const auto sol = solve_turning_point(m, d);
    EXPECT_NEAR(sol.xi, c.expected, 1e-14);
    EXPECT_NEAR(riemann_initial_xi(m, c.lo, c.hi), c.expected, 1e-15);
    EXPECT_LT(sol.residual, 1e-14);
    ASSERT_TRUE(sol.host_piece.has_value());
    EXPECT_EQ(*sol.host_piece, 1u);
  }
}

TEST(TurningPoint, ReportsCoincidentBreakpoints) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  const PiecewiseConstantDensity d({-1.0, 0.0, 1.0}, {0.3, 0.3});
  const auto sol = solve_turning_point(m, d);
  ASSERT_TRUE(sol.coincident_breakpoint.has_value());
  EXPECT_EQ(*sol.coincident_breakpoint, 1u);
}

TEST(TurningPoint, IgnoresMassOutsideTheCorridor) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  const PiecewiseConstantDensity inside({-1, 0, 1}, {0.45, 0.55});
  const PiecewiseConstantDensity spilled({-1.5, -1, 0, 1, 1.2}, {0.9, 0.45, 0.55, 0.1});
  EXPECT_DOUBLE_EQ(solve_turning_point(m, inside).xi, solve_turning_point(m, spilled).xi);
}

TEST(TurningPointProperty, MatchesBisectionOracle) {
  std::mt19937 rng(23);
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  for (int trial = 0; trial < 25; ++trial) {
    const auto d = testing::random_density(rng, 0.9);
    const auto sol = solve_turning_point(m, d);
    EXPECT_GT(sol.xi, -1.0);
    EXPECT_LT(sol.xi, 1.0);
    EXPECT_LT(sol.residual, 1e-12);
    EXPECT_NEAR(sol.xi, bisection_turning_point(m, d), 1e-12) << "trial " << trial;
  }
}

TEST(TurningPointProperty, EvenDataGiveZero) {
  std::mt19937 rng(29);
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  for (int trial = 0; trial < 25; ++trial)
    EXPECT_NEAR(solve_turning_point(m, testing::random_even_density(rng, 0.9)).xi, 0.0, 1e-14);
}

TEST(TurningPointProperty, AddingMassOnTheRightMovesXiRight) {
  std::mt19937 rng(31);
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  for (int trial = 0; trial < 25; ++trial) {
    const auto d = testing::random_density(rng, 0.6);
    const double xi = solve_turning_point(m, d).xi;
    std::vector<double> values = d.values();
    for (std::size_t i = 0; i < values.size(); ++i)
      if (d.breakpoints()[i] >= xi) values[i] += 0.2;
    const double moved = solve_turning_point(m, PiecewiseConstantDensity(d.breakpoints(), values)).xi;
    EXPECT_GE(moved, xi - 1e-15);
  }
}

// Oracle: second-order forward difference of xi along the particle velocities,
// (-3 xi(x) + 4 xi(x + h dx) - xi(x + 2h dx)) / 2h with the split held fixed.
// Forward, because a particle sitting exactly on an exit makes xi kink there.
double flow_derivative(const ModelFunctions& m, const ParticleState& s, double h) {
  const auto speed = ftl_rhs(m, s);
  auto xi_at = [&](double tau) {
    std::vector<double> moved = s.positions;
    for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += tau * speed[i];
    return particle_turning_point(m, moved, s.mass, s.split_index);
  };
  return (-3.0 * xi_at(0.0) + 4.0 * xi_at(h) - xi_at(2.0 * h)) / (2.0 * h);
}

TEST(TurningPointVelocity, RiemannClosedFormsAgreeWithTheDiscreteFormula) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  EXPECT_NEAR(riemann_initial_xi_velocity(m, 0.45, 0.55), -0.387511478420569330, 1e-14);
  EXPECT_NEAR(riemann_initial_xi_velocity(m, 0.1, 0.9), -8.49382716049383, 1e-12);
  const auto state = make_initial_state(m, atomize_riemann(0.45, 0.55, 90, 110));
  EXPECT_NEAR(turning_point_velocity(m, state), riemann_initial_xi_velocity(m, 0.45, 0.55), 1e-9);
  EXPECT_NEAR(turning_point_velocity(m, state), flow_derivative(m, state, 1e-7), 1e-6);
}

TEST(TurningPointVelocityProperty, MatchesFlowDerivativeOnRandomStates) {
  std::mt19937 rng(37);
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testing::random_density(rng, 0.9, 4, false);
    auto state = make_initial_state(m, atomize_count(d, 64 + 8 * trial));
    if (!state.zero_gap()) continue;
    const double xi_dot = turning_point_velocity(m, state);
    EXPECT_NEAR(xi_dot, flow_derivative(m, state, 1e-7), 1e-5 * std::max(1.0, std::abs(xi_dot))) << trial;
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(TurningPointVelocityProperty, MatchesFlowDerivativeWithParticlesBeyondTheExits) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  IntegratorConfig cfg;
  cfg.snapshot_times = {0.3};
  const auto run = integrate(m, make_initial_state(m, atomize_riemann(0.45, 0.55, 90, 110)), 0.3, cfg);
  const auto& s = run.final_state;
  ASSERT_LT(s.positions.front(), -1.0);
  ASSERT_GT(s.positions.back(), 1.0);
  EXPECT_NEAR(turning_point_velocity(m, s), flow_derivative(m, s, 1e-7), 1e-6);
}

TEST(TurningPointVelocity, RejectsStatesWithoutAZeroGap) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  ParticleState s;
  s.positions = {-0.5, 0.0, 0.5};
  s.mass = 0.1;
  s.split_index = -1;
  EXPECT_THROW(turning_point_velocity(m, s), NumericalError);
  s.split_index = 0;
  s.xi = 0.2;  // not inside (x0, x1)
  EXPECT_THROW(turning_point_velocity(m, s), NumericalError);
}

TEST(CollisionIndicator, FrozenValues) {
  const auto m = ModelFunctions::linear_reciprocal(0.95);
  EXPECT_NEAR(riemann_collision_indicator(m, 0.45, 0.55), 0.124977043158860846, 1e-13);
  EXPECT_NEAR(riemann_collision_indicator(m, 0.1, 0.9), -16.7876543209876543, 1e-11);
  EXPECT_NEAR(riemann_collision_indicator(m, 0.0, 0.9), -8.8, 1e-12);
  EXPECT_NEAR(riemann_collision_indicator(m, 0.3, 0.7), -2.882993197278910, 1e-12);
  EXPECT_NEAR(riemann_collision_indicator(m, 0.2, 0.2), 1.6, 1e-14);
  EXPECT_THROW(riemann_collision_indicator(m, 0.6, 0.4), DomainError);
}

TEST(SmallDataCondition, ConstantDatumBelowCriticalDensity) {
  const auto m = ModelFunctions::linear_reciprocal(0.2);
  auto v = check_small_data_condition(m, 0.4);
  EXPECT_TRUE(v.holds);
  EXPECT_NEAR(v.cone_speed, 0.625, 1e-14);
  v = check_small_data_condition(m, 0.5);
  EXPECT_NEAR(v.cone_speed, 0.6640625, 1e-14);
  EXPECT_NEAR(v.margin, 0.1359375, 1e-14);
  EXPECT_FALSE(check_small_data_condition(ModelFunctions::linear_reciprocal(0.3), 0.0).holds);
}

TEST(SmallDataCondition, ConstantCostAlwaysHolds) {
  const auto m = ModelFunctions::linear_constant(0.9);
  EXPECT_EQ(cone_speed(m, 5.0), 0.0);
  EXPECT_TRUE(check_small_data_condition(m, 5.0).holds);
  EXPECT_THROW(check_small_data_condition(ModelFunctions::linear_constant(1.0), 0.1), DomainError);
  EXPECT_THROW(cone_speed(m, -1.0), DomainError);
}

}  // namespace
}  // namespace hughes
