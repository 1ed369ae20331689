#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hughes/density.hpp"
#include "hughes/ftl.hpp"
#include "hughes/model.hpp"
#include "hughes/series.hpp"

namespace hughes {

/// Exact integral of |a - b| over the merged breakpoints (both are zero outside their range).
double l1_distance(const PiecewiseConstantDensity& a, const PiecewiseConstantDensity& b);

/// Sum of the jumps of d restricted to [-1, 1] and extended by zero outside.
double total_variation(const PiecewiseConstantDensity& d);

struct ComparisonReport {
  std::vector<double> times;
  std::vector<double> l1_density;
  std::vector<double> xi_first;
  std::vector<double> xi_second;
  std::vector<double> abs_xi_diff;
  Method first_method = Method::ftl;
  Method second_method = Method::godunov;
  std::size_t first_resolution = 0;
  std::size_t second_resolution = 0;

  double max_l1() const;
  double max_xi_diff() const;
  /// Columns t, l1_density, xi_ftl, xi_godunov, abs_xi_diff.
  void write_csv(std::ostream& out) const;
};

/// Snapshot-by-snapshot comparison. Throws DomainError unless both series
/// have the same snapshot times (to 1e-12).
ComparisonReport compare_methods(const SnapshotSeries& first, const SnapshotSeries& second);

/// Same, but each snapshot of `first` is paired with the nearest-in-time
/// snapshot of `second`; never fails on cadence.
ComparisonReport compare_aligned(const SnapshotSeries& first, const SnapshotSeries& second);

struct ConvergenceRow {
  std::size_t num_gaps = 0;
  double l1_error = 0.0;
  // log(e_prev / e) / log(N / N_prev); empty on the first row.
  std::optional<double> observed_order;
};

struct ConvergenceOptions {
  std::size_t reference_cells = 4096;
  IntegratorConfig integrator;
};

/// L1 distance at t_probe between the FTL density for each particle count in
/// gap_counts and a fine Godunov reference. gap_counts must be increasing and
/// each at least 4.
std::vector<ConvergenceRow> convergence_study(const ModelFunctions& model, const PiecewiseConstantDensity& initial,
                                              const std::vector<std::size_t>& gap_counts, double t_probe,
                                              const ConvergenceOptions& options = {});

}  // namespace hughes
