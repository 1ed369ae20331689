#include "hughes/ftl.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hughes/errors.hpp"
#include "hughes/turning.hpp"

namespace hughes {

namespace {

// Fills `out` with particle speeds; false if a gap is non-positive or a
// density leaves [0, 1].
bool particle_speeds(const ModelFunctions& model, std::span<const double> x, double mass, int split,
                     std::span<double> out) {
  const long n = static_cast<long>(x.size()) - 1;
  for (long i = 0; i <= n; ++i) {
    double rho = 0.0;
    if (i <= split) {
      if (i > 0) {
        const double gap = x[i] - x[i - 1];
        if (!(gap > 0.0)) return false;
        rho = mass / gap;
      }
    } else if (i < n) {
      const double gap = x[i + 1] - x[i];
      if (!(gap > 0.0)) return false;
      rho = mass / gap;
    }
    if (rho > 1.0 + kDensityTolerance) return false;
    const double speed = model.velocity(std::min(rho, 1.0));
    out[i] = i <= split ? -speed : speed;
  }
  return true;
}

bool strictly_increasing(std::span<const double> x) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] < x[i + 1])) return false;
  return true;
}

// Host gap of xi among the particles: -1 left of x[0], n right of x[n].
int host_gap(std::span<const double> x, double xi) {
  const auto it = std::upper_bound(x.begin(), x.end(), xi);
  return static_cast<int>(it - x.begin()) - 1;
}

struct Crossing {
  std::size_t particle;
  CrossingSide side;
};

// Particles of the far group passed by xi between two states with the same split.
std::vector<Crossing> detect_crossings(std::span<const double> x0, double xi0, std::span<const double> x1, double xi1,
                                       int split) {
  std::vector<Crossing> out;
  const int n = static_cast<int>(x0.size()) - 1;
  // Only particles between the two xi-relative orderings can change side.
  for (int p = 0; p <= n; ++p) {
    const double s0 = x0[p] - xi0;
    const double s1 = x1[p] - xi1;
    if (p <= split && s0 < 0.0 && s1 >= 0.0) out.push_back({static_cast<std::size_t>(p), CrossingSide::left_neighbor});
    if (p > split && s0 > 0.0 && s1 <= 0.0) out.push_back({static_cast<std::size_t>(p), CrossingSide::right_neighbor});
  }
  return out;
}

int split_after(int split, const CrossingEvent& event) {
  const int p = static_cast<int>(event.particle_index);
  return event.side == CrossingSide::left_neighbor ? std::min(split, p - 1) : std::max(split, p);
}

class BogackiShampine {
 public:
  BogackiShampine(const ModelFunctions& model, double mass, std::size_t n)
      : model_(model), mass_(mass), k2_(n), k3_(n), stage_(n) {}

  // One step of size h from y with first stage k1. Writes the solution and its
  // final stage (k4) and returns false if a stage left the admissible set.
  bool step(std::span<const double> y, std::span<const double> k1, double h, int split, std::vector<double>& y_new,
            std::vector<double>& k4, std::vector<double>* err) {
    const std::size_t n = y.size();
    y_new.resize(n);
    k4.resize(n);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = y[i] + 0.5 * h * k1[i];
    if (!particle_speeds(model_, stage_, mass_, split, k2_)) return false;
    for (std::size_t i = 0; i < n; ++i) stage_[i] = y[i] + 0.75 * h * k2_[i];
    if (!particle_speeds(model_, stage_, mass_, split, k3_)) return false;
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + h * (2.0 / 9.0 * k1[i] + 1.0 / 3.0 * k2_[i] + 4.0 / 9.0 * k3_[i]);
    if (!particle_speeds(model_, y_new, mass_, split, k4)) return false;
    if (err) {
      err->resize(n);
      for (std::size_t i = 0; i < n; ++i)
        (*err)[i] = h * (-5.0 / 72.0 * k1[i] + 1.0 / 12.0 * k2_[i] + 1.0 / 9.0 * k3_[i] - 1.0 / 8.0 * k4[i]);
    }
    return true;
  }

 private:
  const ModelFunctions& model_;
  double mass_;
  std::vector<double> k2_, k3_, stage_;
};

std::optional<double> try_turning_point(const ModelFunctions& model, std::span<const double> x, double mass,
                                        int split) {
  try {
    return particle_turning_point(model, x, mass, split);
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

Snapshot make_snapshot(const ModelFunctions& model, const ParticleState& state) {
  Snapshot snap;
  snap.time = state.time;
  snap.positions = state.positions;
  snap.split_index = state.split_index;
  snap.xi = state.xi;
  snap.density = discrete_density(state.positions, state.mass, state.zero_gap()).clipped(-1.0, 1.0);
  snap.diagnostics.inside_mass = snap.density.mass();
  snap.diagnostics.max_density = snap.density.max_value();
  snap.diagnostics.balance_residual = solve_turning_point(model, snap.density).residual;
  snap.diagnostics.inside_count = static_cast<std::size_t>(
      std::count_if(state.positions.begin(), state.positions.end(), [](double x) { return x >= -1.0 && x <= 1.0; }));
  return snap;
}

}  // namespace

double particle_turning_point(const ModelFunctions& model, std::span<const double> positions, double mass,
                              int split_index) {
  std::optional<std::size_t> zero_gap;
  if (split_index >= 0 && split_index + 1 < static_cast<int>(positions.size()))
    zero_gap = static_cast<std::size_t>(split_index);
  return solve_turning_point(model, discrete_density(positions, mass, zero_gap)).xi;
}

ParticleState make_initial_state(const ModelFunctions& model, const ParticleConfiguration& config) {
  if (config.positions.size() < 2) throw DomainError("particle system needs at least two particles");
  if (!strictly_increasing(config.positions)) throw DomainError("particle positions must be strictly increasing");

  ParticleState state;
  state.positions = config.positions;
  state.mass = config.mass;

  const auto initial = solve_turning_point(model, discrete_density(state.positions, state.mass));
  if (initial.coincident_breakpoint) {
    if (state.positions.size() < 3) throw DomainError("cannot remove the particle at the turning point");
    state.positions.erase(state.positions.begin() + static_cast<std::ptrdiff_t>(*initial.coincident_breakpoint));
  }
  state.split_index = host_gap(state.positions, initial.xi);
  state.xi = particle_turning_point(model, state.positions, state.mass, state.split_index);

  // Zeroing the host gap can push xi into a neighbouring gap; move the split
  // until xi sits in the zero gap. When the zero-gap solutions of two adjacent
  // gaps straddle the particle between them, xi effectively sits on that
  // particle and it is removed, as for an exact coincidence.
  for (int round = 0; round < 8; ++round) {
    std::set<int> visited{state.split_index};
    for (int iter = 0; iter < 16; ++iter) {
      const int host = host_gap(state.positions, state.xi);
      if (host == state.split_index || visited.contains(host)) break;
      visited.insert(host);
      state.split_index = host;
      state.xi = particle_turning_point(model, state.positions, state.mass, state.split_index);
    }
    const int host = host_gap(state.positions, state.xi);
    if (host == state.split_index) break;
    const int particle = host > state.split_index ? state.split_index + 1 : state.split_index;
    const int last = static_cast<int>(state.positions.size()) - 1;
    if (particle <= 0 || particle >= last || state.positions.size() < 4) break;
    state.positions.erase(state.positions.begin() + particle);
    state.split_index = particle - 1;
    state.xi = particle_turning_point(model, state.positions, state.mass, state.split_index);
  }
  return state;
}

std::vector<double> ftl_rhs(const ModelFunctions& model, const ParticleState& state) {
  std::vector<double> out(state.positions.size());
  if (!strictly_increasing(state.positions)) throw NumericalError("particle ordering violated");
  if (!particle_speeds(model, state.positions, state.mass, state.split_index, out))
    throw NumericalError("particle density outside [0, 1]");
  return out;
}

PolicyOutcome apply_crossing_policy(const ModelFunctions& model, const ParticleState& state,
                                    const CrossingEvent& event, CrossingPolicy policy) {
  PolicyOutcome out{state, false};
  if (policy == CrossingPolicy::halt) {
    out.terminal = true;
    return out;
  }
  if (event.particle_index >= state.positions.size()) throw DomainError("crossing event names an unknown particle");
  if (!strictly_increasing(state.positions)) throw NumericalError("particle ordering violated at crossing");
  out.state.split_index = split_after(state.split_index, event);
  out.state.xi = particle_turning_point(model, out.state.positions, out.state.mass, out.state.split_index);
  return out;
}

FtlRun integrate(const ModelFunctions& model, ParticleState state, double t_end, const IntegratorConfig& cfg) {
  if (!(t_end > state.time)) throw DomainError("t_end must exceed the current time");
  if (!strictly_increasing(state.positions)) throw NumericalError("particle ordering violated");

  const double t0 = state.time;
  std::vector<double> snap_times = cfg.snapshot_times.empty() ? uniform_times(t0, t_end, 20) : cfg.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  std::erase_if(snap_times, [&](double t) { return t < t0 || t > t_end; });
  if (snap_times.empty() || snap_times.back() < t_end) snap_times.push_back(t_end);

  FtlRun run;
  run.series.method = Method::ftl;
  run.series.resolution = state.num_gaps();

  const std::size_t n = state.positions.size();
  BogackiShampine rk(model, state.mass, n);
  std::vector<double> k1(n), k4(n), y_new(n), err(n), y_probe(n), k_probe(n);
  if (!particle_speeds(model, state.positions, state.mass, state.split_index, k1))
    throw NumericalError("initial particle density outside [0, 1]");

  std::size_t next_snap = 0;
  if (snap_times.front() <= t0) {
    run.series.snapshots.push_back(make_snapshot(model, state));
    ++next_snap;
  }

  double h = std::min(cfg.initial_step, cfg.max_step);
  double err_prev = 1.0;
  const double time_eps = 1e-14 * std::max(1.0, std::abs(t_end));

  while (next_snap < snap_times.size()) {
    const double target = snap_times[next_snap];
    const double remaining = target - state.time;
    const bool to_target = h >= remaining - time_eps;
    const double step = to_target ? remaining : h;
    if (step < cfg.min_step && !to_target)
      throw NumericalError("step size underflow at t = " + std::to_string(state.time));

    auto reject = [&](double factor) {
      h = step * factor;
      ++run.rejected_steps;
      if (h < cfg.min_step) throw NumericalError("step size underflow at t = " + std::to_string(state.time));
    };

    if (!rk.step(state.positions, k1, step, state.split_index, y_new, k4, &err)) {
      reject(0.25);
      continue;
    }
    double err_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(state.positions[i]), std::abs(y_new[i]));
      err_norm = std::max(err_norm, std::abs(err[i]) / scale);
    }
    if (err_norm > 1.0) {
      reject(std::max(0.2, 0.9 * std::pow(err_norm, -1.0 / 3.0)));
      continue;
    }
    if (!strictly_increasing(y_new)) {
      reject(0.25);
      continue;
    }
    const auto xi_new = try_turning_point(model, y_new, state.mass, state.split_index);
    if (!xi_new) {
      reject(0.5);
      continue;
    }

    auto crossings = detect_crossings(state.positions, state.xi, y_new, *xi_new, state.split_index);
    if (!crossings.empty()) {
      // Bisection on the first instant at which a far-side particle is passed.
      double lo = 0.0;
      double hi = step;
      std::vector<double> y_lo = state.positions;
      double xi_lo = state.xi;
      std::vector<double> y_hi = y_new;
      double xi_hi = *xi_new;
      while (hi - lo > cfg.event_tol) {
        const double mid = 0.5 * (lo + hi);
        if (!rk.step(state.positions, k1, mid, state.split_index, y_probe, k_probe, nullptr))
          throw NumericalError("stage failure while locating a crossing");
        const auto xi_mid = try_turning_point(model, y_probe, state.mass, state.split_index);
        if (!xi_mid) throw NumericalError("turning point undefined while locating a crossing");
        if (!detect_crossings(state.positions, state.xi, y_probe, *xi_mid, state.split_index).empty()) {
          hi = mid;
          y_hi = y_probe;
          xi_hi = *xi_mid;
        } else {
          lo = mid;
          y_lo = y_probe;
          xi_lo = *xi_mid;
        }
      }
      crossings = detect_crossings(state.positions, state.xi, y_hi, xi_hi, state.split_index);

      ParticleState before{state.time + lo, y_lo, state.split_index, state.mass, xi_lo};
      double xi_dot = 0.0;
      try {
        xi_dot = turning_point_velocity(model, before);
      } catch (const NumericalError&) {
        xi_dot = (xi_hi - xi_lo) / (hi - lo);
      }
      std::vector<double> speeds(n);
      particle_speeds(model, y_lo, state.mass, state.split_index, speeds);

      state.time += hi;
      state.positions = y_hi;
      state.xi = xi_hi;
      ++run.accepted_steps;

      bool terminal = false;
      for (const auto& c : crossings) {
        CrossingEvent event{state.time, c.particle, c.side, xi_hi, xi_dot - speeds[c.particle]};
        run.events.push_back(event);
        auto outcome = apply_crossing_policy(model, state, event, cfg.policy);
        state = std::move(outcome.state);
        terminal = terminal || outcome.terminal;
      }
      if (run.events.size() > cfg.max_events)
        throw NumericalError("crossing event limit exceeded at t = " + std::to_string(state.time));
      if (terminal) {
        run.halted = true;
        run.series.snapshots.push_back(make_snapshot(model, state));
        break;
      }
      if (!particle_speeds(model, state.positions, state.mass, state.split_index, k1))
        throw NumericalError("particle density outside [0, 1] after crossing");
      if (to_target && hi >= step) {
        state.time = target;
        run.series.snapshots.push_back(make_snapshot(model, state));
        ++next_snap;
      }
      continue;
    }

    state.time = to_target ? target : state.time + step;
    state.positions.swap(y_new);
    state.xi = *xi_new;
    k1.swap(k4);
    ++run.accepted_steps;

    const double e = std::max(err_norm, 1e-10);
    const double factor = 0.9 * std::pow(e, -0.7 / 3.0) * std::pow(err_prev, 0.4 / 3.0);
    err_prev = std::max(err_norm, 1e-4);
    const double proposed = step * std::clamp(factor, 0.2, 5.0);
    // A step shortened to land on a snapshot time does not shrink the next one.
    h = std::min(cfg.max_step, to_target ? std::max(proposed, h) : proposed);

    if (to_target) {
      run.series.snapshots.push_back(make_snapshot(model, state));
      ++next_snap;
    }
  }

  run.series.events = run.events;
  run.final_state = std::move(state);
  return run;
}

EvacuationReport evacuation_metrics(const SnapshotSeries& series, double mass_threshold) {
  EvacuationReport out;
  for (const auto& snap : series.snapshots) {
    out.times.push_back(snap.time);
    out.inside_count.push_back(snap.diagnostics.inside_count);
    out.inside_mass.push_back(snap.diagnostics.inside_mass);
    if (!out.time_below_threshold && snap.diagnostics.inside_mass < mass_threshold)
      out.time_below_threshold = snap.time;
  }
  return out;
}

}  // namespace hughes
