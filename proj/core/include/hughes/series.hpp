#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hughes/density.hpp"

namespace hughes {

enum class Method { ftl, godunov };

std::string_view to_string(Method method);

enum class CrossingSide { left_neighbor, right_neighbor };

std::string_view to_string(CrossingSide side);

/// The turning point reached a particle of the opposite group.
struct CrossingEvent {
  double time = 0.0;
  std::size_t particle_index = 0;
  CrossingSide side = CrossingSide::left_neighbor;
  double xi_at_event = 0.0;
  // xi' - x'_p just before the crossing
  double relative_speed = 0.0;
};

struct SnapshotDiagnostics {
  double inside_mass = 0.0;
  double max_density = 0.0;
  double balance_residual = 0.0;
  std::size_t inside_count = 0;       // ftl: particles in [-1, 1]
  double cumulative_outflux = 0.0;    // godunov: mass that left through the exits
};

struct Snapshot {
  double time = 0.0;
  PiecewiseConstantDensity density;  // restricted to [-1, 1]
  double xi = 0.0;
  SnapshotDiagnostics diagnostics;
  std::vector<double> positions;     // ftl only, including particles past the exits
  int split_index = -1;              // ftl only
};

struct SnapshotSeries {
  Method method = Method::ftl;
  std::vector<Snapshot> snapshots;
  std::vector<CrossingEvent> events;
  // Resolution: particle gaps for ftl, cells for godunov.
  std::size_t resolution = 0;

  std::vector<double> times() const;
  std::vector<double> xi_history() const;
};

/// n + 1 uniform times on [t0, t_end] (both ends included).
std::vector<double> uniform_times(double t0, double t_end, std::size_t n_intervals);

}  // namespace hughes
