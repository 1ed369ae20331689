#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hughes/atomize.hpp"
#include "hughes/model.hpp"
#include "hughes/particle_state.hpp"
#include "hughes/series.hpp"

namespace hughes {

enum class CrossingPolicy {
  switch_direction,  // crossed particle joins the other group, integration continues
  halt,              // stop at the first crossing
};

struct IntegratorConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  double initial_step = 1e-3;
  double max_step = 1e-2;
  double min_step = 1e-13;
  double event_tol = 1e-8;
  CrossingPolicy policy = CrossingPolicy::switch_direction;
  std::size_t max_events = 200000;
  // Snapshot times inside [t0, t_end]; empty means 21 uniform times.
  std::vector<double> snapshot_times;
};

/// Initial particle state: locates the turning point of the reconstructed
/// datum, removes a particle that coincides with it, splits the particles into
/// the two groups and recomputes xi with the zero gap in place. If no split
/// keeps xi inside its own zero gap, the particle that xi keeps jumping over is
/// removed as well. Removed particles take their mass m with them.
ParticleState make_initial_state(const ModelFunctions& model, const ParticleConfiguration& config);

/// xi for the given particles with the split gap at zero density, using only
/// the part of the reconstruction inside [-1, 1].
double particle_turning_point(const ModelFunctions& model, std::span<const double> positions, double mass,
                              int split_index);

/// Particle velocities. Left movers follow their left neighbour, right movers
/// their right neighbour; the outermost particle of each group moves at v_max.
/// Throws NumericalError if the ordering is violated.
std::vector<double> ftl_rhs(const ModelFunctions& model, const ParticleState& state);

struct FtlRun {
  SnapshotSeries series;
  std::vector<CrossingEvent> events;
  ParticleState final_state;
  bool halted = false;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Adaptive Bogacki-Shampine 3(2) integration of the particle system to t_end.
///
/// xi is recomputed after every accepted step. When xi passes a particle of
/// the group on its far side the crossing time is located by bisection to
/// cfg.event_tol and the crossing policy is applied.
FtlRun integrate(const ModelFunctions& model, ParticleState state, double t_end, const IntegratorConfig& cfg);

struct PolicyOutcome {
  ParticleState state;
  bool terminal = false;
};

/// Direction update for a crossing: under switch_direction the crossed particle
/// changes group (split index moves by one) and xi is recomputed; under halt the
/// state is returned unchanged with the terminal flag set.
PolicyOutcome apply_crossing_policy(const ModelFunctions& model, const ParticleState& state,
                                    const CrossingEvent& event, CrossingPolicy policy);

struct EvacuationReport {
  std::vector<double> times;
  std::vector<std::size_t> inside_count;
  std::vector<double> inside_mass;
  std::optional<double> time_below_threshold;
};

EvacuationReport evacuation_metrics(const SnapshotSeries& series, double mass_threshold);

}  // namespace hughes
