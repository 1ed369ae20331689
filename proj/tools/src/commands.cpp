#include "hughes_cli/commands.hpp"

#include <fstream>
#include <future>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hughes/godunov.hpp"
#include "hughes/turning.hpp"

namespace hughes::cli {

namespace {

std::ofstream open_output(const RunConfig& config, const std::string& name) {
  std::filesystem::create_directories(config.output_directory);
  const auto path = config.output_directory / (config.prefix + name);
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

// Two pieces [-1, 0] and [0, 1]: the Riemann datum of the closed-form checks.
std::optional<std::pair<double, double>> riemann_states(const RunConfig& config) {
  if (config.initial.size() != 2) return std::nullopt;
  const auto& a = config.initial[0];
  const auto& b = config.initial[1];
  if (a.left != -1.0 || a.right != 0.0 || b.left != 0.0 || b.right != 1.0) return std::nullopt;
  return std::pair{a.value, b.value};
}

}  // namespace

ParticleConfiguration initial_particles(const RunConfig& config) {
  if (config.riemann) {
    const auto states = riemann_states(config);
    if (!states) throw ConfigError("discretization.riemann needs initial pieces '-1 0 a, 0 1 b'");
    return atomize_riemann(states->first, states->second, config.riemann->n_minus, config.riemann->n_plus);
  }
  const auto density = config.initial_density();
  if (config.n_dyadic) return atomize(density, *config.n_dyadic);
  return atomize_count(density, *config.particles);
}

FtlRun run_ftl(const RunConfig& config) {
  const ModelFunctions model(config.model);
  const auto state = make_initial_state(model, initial_particles(config));
  return integrate(model, state, config.t_end, config.integrator());
}

SnapshotSeries run_eulerian(const RunConfig& config) {
  const ModelFunctions model(config.model);
  return run_godunov(model, config.initial_density(), config.godunov_cells(), config.t_end, config.godunov());
}

void write_snapshots(std::ostream& out, const SnapshotSeries& series) {
  out << "t,x_left,x_right,density\n";
  for (const auto& snap : series.snapshots) {
    const auto& breaks = snap.density.breakpoints();
    const auto& values = snap.density.values();
    for (std::size_t i = 0; i < values.size(); ++i)
      fmt::print(out, "{},{},{},{}\n", snap.time, breaks[i], breaks[i + 1], values[i]);
  }
}

void write_xi(std::ostream& out, const SnapshotSeries& series) {
  out << "t,xi\n";
  for (const auto& snap : series.snapshots) fmt::print(out, "{},{}\n", snap.time, snap.xi);
}

void write_events(std::ostream& out, const std::vector<CrossingEvent>& events) {
  out << "t,particle,side,xi,relative_speed\n";
  for (const auto& e : events)
    fmt::print(out, "{},{},{},{},{}\n", e.time, e.particle_index, to_string(e.side), e.xi_at_event, e.relative_speed);
}

void write_particles(std::ostream& out, const SnapshotSeries& series) {
  out << "t,index,position\n";
  for (const auto& snap : series.snapshots)
    for (std::size_t i = 0; i < snap.positions.size(); ++i)
      fmt::print(out, "{},{},{}\n", snap.time, i, snap.positions[i]);
}

void simulate_ftl(const RunConfig& config) {
  const auto run = run_ftl(config);
  auto snapshots = open_output(config, "snapshots.csv");
  write_snapshots(snapshots, run.series);
  auto xi = open_output(config, "xi.csv");
  write_xi(xi, run.series);
  auto events = open_output(config, "events.csv");
  write_events(events, run.events);
  auto particles = open_output(config, "particles.csv");
  write_particles(particles, run.series);
}

void simulate_godunov(const RunConfig& config) {
  const auto series = run_eulerian(config);
  auto snapshots = open_output(config, "snapshots.csv");
  write_snapshots(snapshots, series);
  auto xi = open_output(config, "xi.csv");
  write_xi(xi, series);
}

ComparisonReport compare(const RunConfig& config) {
  // The two solvers share only the immutable config.
  auto eulerian = std::async(std::launch::async, [&config] { return run_eulerian(config); });
  const auto particles = run_ftl(config);
  const auto report = compare_aligned(particles.series, eulerian.get());
  auto out = open_output(config, "comparison.csv");
  report.write_csv(out);
  return report;
}

void analyze(const RunConfig& config, std::ostream& report) {
  const ModelFunctions model(config.model);
  const auto density = config.initial_density();
  const double tv = total_variation(density);
  const auto constants = derived_constants(model);
  fmt::print(report, "model: v={} c={} rho_max={}\n", to_string(model.velocity_kind()), to_string(model.cost_kind()),
             model.rho_max());
  fmt::print(report, "total_variation: {}\n", tv);
  fmt::print(report, "L: {}\n", constants.lipschitz_L);
  fmt::print(report, "C: {}\n", constants.big_C);
  fmt::print(report, "cone_speed Q: {}\n", cone_speed(model, tv));
  if (model.rho_max() < 1.0) {
    const auto verdict = check_small_data_condition(model, tv);
    fmt::print(report, "small_data_condition: {} (margin {})\n", verdict.holds ? "holds" : "fails", verdict.margin);
  } else {
    fmt::print(report, "small_data_condition: undefined for rho_max = 1\n");
  }
  if (const auto critical = critical_rho_max(model)) {
    fmt::print(report, "critical_rho_max: {}\n", *critical);
  } else {
    fmt::print(report, "critical_rho_max: none\n");
  }
  if (const auto states = riemann_states(config)) {
    const auto [lo, hi] = *states;
    fmt::print(report, "riemann_xi0: {}\n", riemann_initial_xi(model, lo, hi));
    fmt::print(report, "riemann_xi_velocity0: {}\n", riemann_initial_xi_velocity(model, lo, hi));
    if (lo <= hi) {
      const double f = riemann_collision_indicator(model, lo, hi);
      fmt::print(report, "collision_indicator: {} ({})\n", f, f > 0.0 ? "no collision" : "collision possible");
    }
  }
}

void dump_atomization(const RunConfig& config) {
  const auto particles = initial_particles(config);
  auto out = open_output(config, "particles.csv");
  out << "t,index,position\n";
  for (std::size_t i = 0; i < particles.positions.size(); ++i) fmt::print(out, "0,{},{}\n", i, particles.positions[i]);
}

}  // namespace hughes::cli
