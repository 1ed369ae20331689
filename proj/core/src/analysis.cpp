#include "hughes/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "hughes/atomize.hpp"
#include "hughes/errors.hpp"
#include "hughes/godunov.hpp"

namespace hughes {

std::string_view to_string(Method method) {
  return method == Method::ftl ? "ftl" : "godunov";
}

std::string_view to_string(CrossingSide side) {
  return side == CrossingSide::left_neighbor ? "left_neighbor" : "right_neighbor";
}

std::vector<double> SnapshotSeries::times() const {
  std::vector<double> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) out.push_back(s.time);
  return out;
}

std::vector<double> SnapshotSeries::xi_history() const {
  std::vector<double> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) out.push_back(s.xi);
  return out;
}

std::vector<double> uniform_times(double t0, double t_end, std::size_t n_intervals) {
  if (n_intervals == 0) throw DomainError("need at least one interval");
  if (!(t_end > t0)) throw DomainError("t_end must exceed t0");
  std::vector<double> out(n_intervals + 1);
  for (std::size_t k = 0; k <= n_intervals; ++k)
    out[k] = t0 + (t_end - t0) * static_cast<double>(k) / static_cast<double>(n_intervals);
  out.back() = t_end;
  return out;
}

double l1_distance(const PiecewiseConstantDensity& a, const PiecewiseConstantDensity& b) {
  std::vector<double> breaks;
  breaks.reserve(a.breakpoints().size() + b.breakpoints().size());
  std::merge(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(), b.breakpoints().end(),
             std::back_inserter(breaks));
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  // Both densities are constant on each merged interval, so the left end decides.
  std::size_t ia = 0, ib = 0;
  const auto& ba = a.breakpoints();
  const auto& bb = b.breakpoints();
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double x = breaks[k];
    while (ia < ba.size() && ba[ia] <= x) ++ia;
    while (ib < bb.size() && bb[ib] <= x) ++ib;
    const double va = (ia == 0 || ia == ba.size()) ? 0.0 : a.values()[ia - 1];
    const double vb = (ib == 0 || ib == bb.size()) ? 0.0 : b.values()[ib - 1];
    total += std::abs(va - vb) * (breaks[k + 1] - x);
  }
  return total;
}

double total_variation(const PiecewiseConstantDensity& d) {
  const auto inside = d.clipped(-1.0, 1.0);
  double previous = 0.0;
  double tv = 0.0;
  for (double v : inside.values()) {
    tv += std::abs(v - previous);
    previous = v;
  }
  return tv + previous;
}

double ComparisonReport::max_l1() const {
  return l1_density.empty() ? 0.0 : *std::max_element(l1_density.begin(), l1_density.end());
}

double ComparisonReport::max_xi_diff() const {
  return abs_xi_diff.empty() ? 0.0 : *std::max_element(abs_xi_diff.begin(), abs_xi_diff.end());
}

void ComparisonReport::write_csv(std::ostream& out) const {
  out << "t,l1_density,xi_" << to_string(first_method) << ",xi_" << to_string(second_method) << ",abs_xi_diff\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < times.size(); ++k)
    out << times[k] << ',' << l1_density[k] << ',' << xi_first[k] << ',' << xi_second[k] << ',' << abs_xi_diff[k]
        << '\n';
}

namespace {

ComparisonReport compare_pairs(const SnapshotSeries& first, const SnapshotSeries& second,
                               const std::vector<std::size_t>& partner) {
  ComparisonReport report;
  report.first_method = first.method;
  report.second_method = second.method;
  report.first_resolution = first.resolution;
  report.second_resolution = second.resolution;
  for (std::size_t k = 0; k < first.snapshots.size(); ++k) {
    const auto& a = first.snapshots[k];
    const auto& b = second.snapshots[partner[k]];
    report.times.push_back(a.time);
    report.l1_density.push_back(l1_distance(a.density, b.density));
    report.xi_first.push_back(a.xi);
    report.xi_second.push_back(b.xi);
    report.abs_xi_diff.push_back(std::abs(a.xi - b.xi));
  }
  return report;
}

}  // namespace

ComparisonReport compare_methods(const SnapshotSeries& first, const SnapshotSeries& second) {
  if (first.snapshots.size() != second.snapshots.size())
    throw DomainError("series have different numbers of snapshots");
  std::vector<std::size_t> partner(first.snapshots.size());
  for (std::size_t k = 0; k < partner.size(); ++k) {
    if (std::abs(first.snapshots[k].time - second.snapshots[k].time) > 1e-12)
      throw DomainError("series have different snapshot times");
    partner[k] = k;
  }
  return compare_pairs(first, second, partner);
}

ComparisonReport compare_aligned(const SnapshotSeries& first, const SnapshotSeries& second) {
  if (second.snapshots.empty()) throw DomainError("cannot align against an empty series");
  const auto times = second.times();
  std::vector<std::size_t> partner(first.snapshots.size());
  for (std::size_t k = 0; k < partner.size(); ++k) {
    const double t = first.snapshots[k].time;
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end() || (it != times.begin() && t - *std::prev(it) <= *it - t)) --it;
    partner[k] = static_cast<std::size_t>(it - times.begin());
  }
  return compare_pairs(first, second, partner);
}

std::vector<ConvergenceRow> convergence_study(const ModelFunctions& model, const PiecewiseConstantDensity& initial,
                                              const std::vector<std::size_t>& gap_counts, double t_probe,
                                              const ConvergenceOptions& options) {
  if (gap_counts.empty()) throw DomainError("convergence study needs at least one resolution");
  for (std::size_t k = 0; k < gap_counts.size(); ++k) {
    if (gap_counts[k] < 4) throw DomainError("convergence study needs at least 4 gaps per run");
    if (k > 0 && gap_counts[k] <= gap_counts[k - 1]) throw DomainError("resolutions must be increasing");
  }
  GodunovConfig gcfg;
  gcfg.snapshot_times = {t_probe};
  const auto reference = run_godunov(model, initial, options.reference_cells, t_probe, gcfg);
  const auto& ref_density = reference.snapshots.back().density;

  std::vector<ConvergenceRow> rows;
  for (std::size_t n : gap_counts) {
    auto cfg = options.integrator;
    cfg.snapshot_times = {t_probe};
    const auto state = make_initial_state(model, atomize_count(initial, n));
    const auto run = integrate(model, state, t_probe, cfg);
    ConvergenceRow row;
    row.num_gaps = n;
    row.l1_error = l1_distance(run.series.snapshots.back().density, ref_density);
    if (!rows.empty() && row.l1_error > 0.0 && rows.back().l1_error > 0.0)
      row.observed_order = std::log(rows.back().l1_error / row.l1_error) /
                           std::log(static_cast<double>(n) / static_cast<double>(rows.back().num_gaps));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hughes
