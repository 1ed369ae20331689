#pragma once

#include <filesystem>
#include <iosfwd>

#include "hughes/analysis.hpp"
#include "hughes/atomize.hpp"
#include "hughes/ftl.hpp"
#include "hughes_cli/run_config.hpp"

namespace hughes::cli {

ParticleConfiguration initial_particles(const RunConfig& config);

FtlRun run_ftl(const RunConfig& config);
SnapshotSeries run_eulerian(const RunConfig& config);

// CSV writers. Every file starts with a header row.
void write_snapshots(std::ostream& out, const SnapshotSeries& series);  // t,x_left,x_right,density
void write_xi(std::ostream& out, const SnapshotSeries& series);         // t,xi
void write_events(std::ostream& out, const std::vector<CrossingEvent>& events);
void write_particles(std::ostream& out, const SnapshotSeries& series);  // t,index,position

// Subcommands. Files go to config.output_directory, named prefix + file name.
void simulate_ftl(const RunConfig& config);
void simulate_godunov(const RunConfig& config);
ComparisonReport compare(const RunConfig& config);
void analyze(const RunConfig& config, std::ostream& report);
void dump_atomization(const RunConfig& config);

}  // namespace hughes::cli
