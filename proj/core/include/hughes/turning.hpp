#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "hughes/density.hpp"
#include "hughes/model.hpp"
#include "hughes/particle_state.hpp"

namespace hughes {

// Distance below which the turning point counts as sitting on a breakpoint.
inline constexpr double kCoincidenceTolerance = 1e-12;

struct TurningPointSolution {
  double xi = 0.0;
  // Index of the density piece containing xi (none in vacuum outside the pieces).
  std::optional<std::size_t> host_piece;
  // Index of a breakpoint within kCoincidenceTolerance of xi.
  std::optional<std::size_t> coincident_breakpoint;
  // |left cost integral - right cost integral|
  double residual = 0.0;
};

/// Unique xi in (-1, 1) with equal cost-weighted distance to both exits.
///
/// The density is clipped to [-1, 1] and vacuum carries cost c(0) = 1. The
/// cumulative cost G(x) is piecewise linear and strictly increasing, so xi is
/// found by walking the prefix sums and inverting one linear piece exactly.
TurningPointSolution solve_turning_point(const ModelFunctions& model, const PiecewiseConstantDensity& density);

/// Exact time derivative of the discrete turning point for the follow-the-leader
/// system, assembled from the boundary terms at -1, +1 and the two Upsilon
/// telescoping sums.
///
/// The boundary brackets are x[I- - 1] <= -1 < x[I-] and x[I+] < 1 <= x[I+ + 1];
/// when no particle lies beyond an exit the bracket degenerates to I- = 0
/// (resp. I+ = N) and its boundary term vanishes. Throws NumericalError if
/// xi is not strictly inside the zero gap or the brackets do not enclose it.
double turning_point_velocity(const ModelFunctions& model, const ParticleState& state);

/// xi for rho_minus on [-1, 0] and rho_plus on (0, 1]: (c(rho+) - c(rho-)) / (2 c(rho+)).
double riemann_initial_xi(const ModelFunctions& model, double rho_minus, double rho_plus);

/// Closed-form xi'(0) for the uniform Riemann atomization.
double riemann_initial_xi_velocity(const ModelFunctions& model, double rho_minus, double rho_plus);

/// F(rho-, rho+); a positive value rules out a collision of the turning point
/// with its neighbours for the Riemann datum.
double riemann_collision_indicator(const ModelFunctions& model, double rho_minus, double rho_plus);

/// Q = (v_max / 2) (L TV + 3 C), the a-priori bound on |xi'|.
double cone_speed(const ModelFunctions& model, double total_variation);

struct SmallDataVerdict {
  bool holds = false;
  double cone_speed = 0.0;
  double margin = 0.0;  // v(rho_max) - Q
};

/// Small-data condition Q < v(rho_max). Throws DomainError when rho_max = 1.
SmallDataVerdict check_small_data_condition(const ModelFunctions& model, double total_variation);

/// Largest rho_max for which the small-data condition can hold (TV = 0), i.e.
/// the root of (3/2) v_max c'(r) r = v(r). Empty when there is no sign change in (0, 1).
std::optional<double> critical_rho_max(const ModelFunctions& model);

}  // namespace hughes
