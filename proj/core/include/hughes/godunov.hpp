#pragma once

#include <cstddef>
#include <vector>

#include "hughes/density.hpp"
#include "hughes/model.hpp"
#include "hughes/series.hpp"

namespace hughes {

/// Cell averages on a uniform grid over [-1, 1]. Ghost cells on both sides are
/// held at zero density and are not stored.
struct EulerianState {
  double time = 0.0;
  double cell_width = 0.0;
  std::vector<double> averages;
  double xi = 0.0;
  // Mass that has left through x = -1 and x = +1 so far.
  double cumulative_outflux = 0.0;

  std::size_t num_cells() const { return averages.size(); }
  double interface_position(std::size_t k) const { return -1.0 + static_cast<double>(k) * cell_width; }
  double mass() const;
  PiecewiseConstantDensity density() const;
};

/// Godunov flux of sign * f between the states left | right.
double godunov_flux(const ModelFunctions& model, double left, double right, int sign);

/// Exact cell averages of `initial` on num_cells uniform cells of [-1, 1].
EulerianState project(const ModelFunctions& model, const PiecewiseConstantDensity& initial, std::size_t num_cells);

/// Largest dt with 2 dt max|f'| <= cfl dx. The cell holding xi loses mass
/// through both faces, so the usual bound is halved to keep it non-negative.
double max_stable_dt(const ModelFunctions& model, const EulerianState& state, double cfl);

/// One conservative update: xi is recomputed on the current cell averages,
/// interfaces left of xi carry -f and those right of it +f, an interface on xi
/// carries no flux. Throws DomainError if dt breaks the CFL bound.
EulerianState step_eulerian(const ModelFunctions& model, const EulerianState& state, double dt);

struct GodunovConfig {
  double cfl = 0.9;
  // Snapshot times inside [0, t_end]; empty means 21 uniform times.
  std::vector<double> snapshot_times;
};

SnapshotSeries run_godunov(const ModelFunctions& model, const PiecewiseConstantDensity& initial,
                           std::size_t num_cells, double t_end, const GodunovConfig& cfg = {});

}  // namespace hughes
