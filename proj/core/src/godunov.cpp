#include "hughes/godunov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hughes/errors.hpp"
#include "hughes/turning.hpp"

namespace hughes {

namespace {

double concave_flux(const ModelFunctions& model, double left, double right) {
  if (left <= right) return std::min(model.flux(left), model.flux(right));
  const double peak = model.rho_hat();
  if (right <= peak && peak <= left) return model.flux(peak);
  return std::max(model.flux(left), model.flux(right));
}

double grid_turning_point(const ModelFunctions& model, const EulerianState& state) {
  return solve_turning_point(model, state.density()).xi;
}

Snapshot make_snapshot(const ModelFunctions& model, const EulerianState& state) {
  Snapshot snap;
  snap.time = state.time;
  snap.density = state.density();
  const auto solution = solve_turning_point(model, snap.density);
  snap.xi = solution.xi;
  snap.diagnostics.inside_mass = state.mass();
  snap.diagnostics.max_density = snap.density.max_value();
  snap.diagnostics.balance_residual = solution.residual;
  snap.diagnostics.cumulative_outflux = state.cumulative_outflux;
  return snap;
}

}  // namespace

double EulerianState::mass() const {
  return cell_width * std::accumulate(averages.begin(), averages.end(), 0.0);
}

PiecewiseConstantDensity EulerianState::density() const {
  std::vector<double> breaks(averages.size() + 1);
  for (std::size_t k = 0; k < breaks.size(); ++k) breaks[k] = interface_position(k);
  breaks.back() = 1.0;
  return PiecewiseConstantDensity(std::move(breaks), averages);
}

double godunov_flux(const ModelFunctions& model, double left, double right, int sign) {
  if (sign >= 0) return concave_flux(model, left, right);
  return -concave_flux(model, right, left);
}

EulerianState project(const ModelFunctions& model, const PiecewiseConstantDensity& initial, std::size_t num_cells) {
  if (num_cells == 0) throw DomainError("grid needs at least one cell");
  EulerianState state;
  state.cell_width = 2.0 / static_cast<double>(num_cells);
  state.averages.resize(num_cells);
  double below = initial.cumulative_mass(-1.0);
  for (std::size_t k = 0; k < num_cells; ++k) {
    const double right = k + 1 == num_cells ? 1.0 : state.interface_position(k + 1);
    const double above = initial.cumulative_mass(right);
    state.averages[k] = std::max(0.0, (above - below) / state.cell_width);
    below = above;
  }
  state.xi = grid_turning_point(model, state);
  return state;
}

double max_stable_dt(const ModelFunctions& model, const EulerianState& state, double cfl) {
  return cfl * state.cell_width / (2.0 * model.max_wave_speed());
}

EulerianState step_eulerian(const ModelFunctions& model, const EulerianState& state, double dt) {
  if (!(dt >= 0.0)) throw DomainError("time step must be non-negative");
  if (2.0 * dt * model.max_wave_speed() > state.cell_width * (1.0 + 1e-12))
    throw DomainError("time step violates the CFL condition");

  const std::size_t n = state.num_cells();
  EulerianState next = state;
  next.xi = grid_turning_point(model, state);

  std::vector<double> flux(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double left = k == 0 ? 0.0 : state.averages[k - 1];
    const double right = k == n ? 0.0 : state.averages[k];
    const double position = state.interface_position(k);
    if (std::abs(position - next.xi) <= kCoincidenceTolerance) {
      flux[k] = 0.0;
    } else {
      flux[k] = godunov_flux(model, left, right, position < next.xi ? -1 : 1);
    }
  }

  const double ratio = dt / state.cell_width;
  for (std::size_t k = 0; k < n; ++k) {
    double value = state.averages[k] - ratio * (flux[k + 1] - flux[k]);
    // Vacuum cells can pick up negative roundoff from the flux difference.
    if (value < 0.0) {
      if (value < -kDensityTolerance) throw NumericalError("negative cell average in Godunov update");
      value = 0.0;
    }
    next.averages[k] = value;
  }
  next.cumulative_outflux += dt * (flux[n] - flux[0]);
  next.time = state.time + dt;
  return next;
}

SnapshotSeries run_godunov(const ModelFunctions& model, const PiecewiseConstantDensity& initial,
                           std::size_t num_cells, double t_end, const GodunovConfig& cfg) {
  if (num_cells < 10) throw DomainError("Godunov grid needs at least 10 cells");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw DomainError("CFL number must lie in (0, 1]");

  std::vector<double> snap_times = cfg.snapshot_times.empty() ? uniform_times(0.0, t_end, 20) : cfg.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  std::erase_if(snap_times, [&](double t) { return t < 0.0 || t > t_end; });
  if (snap_times.empty() || snap_times.back() < t_end) snap_times.push_back(t_end);

  SnapshotSeries series;
  series.method = Method::godunov;
  series.resolution = num_cells;

  EulerianState state = project(model, initial, num_cells);
  const double dt_max = max_stable_dt(model, state, cfg.cfl);
  const double time_eps = 1e-14 * std::max(1.0, t_end);
  for (double target : snap_times) {
    while (state.time < target - time_eps) {
      const double remaining = target - state.time;
      const bool last = remaining <= dt_max * (1.0 + 1e-12);
      state = step_eulerian(model, state, last ? remaining : dt_max);
      if (last) state.time = target;
    }
    series.snapshots.push_back(make_snapshot(model, state));
  }
  return series;
}

}  // namespace hughes
