#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hughes/density.hpp"
#include "hughes/ftl.hpp"
#include "hughes/godunov.hpp"
#include "hughes/model.hpp"

namespace hughes::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RiemannSplit {
  std::size_t n_minus = 0;
  std::size_t n_plus = 0;
};

struct RunConfig {
  ModelSpec model;
  std::vector<DensityPiece> initial;

  // Exactly one of the three particle discretizations is set.
  std::optional<std::size_t> particles;
  std::optional<int> n_dyadic;
  std::optional<RiemannSplit> riemann;
  std::optional<std::size_t> num_cells;  // defaults to the particle gap count

  double t_end = 1.0;
  std::size_t snapshot_count = 21;

  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  double cfl = 0.9;
  CrossingPolicy crossing_policy = CrossingPolicy::switch_direction;

  std::filesystem::path output_directory = ".";
  std::string prefix;

  PiecewiseConstantDensity initial_density() const { return PiecewiseConstantDensity::from_pieces(initial); }
  std::size_t particle_gaps() const;
  std::size_t godunov_cells() const { return num_cells.value_or(particle_gaps()); }
  std::vector<double> snapshot_times() const;
  IntegratorConfig integrator() const;
  GodunovConfig godunov() const;
};

/// Parses an INI run configuration. Throws ConfigError with a message naming
/// the offending key on any syntax or validation failure.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Checks the invariants that do not depend on the parser: pieces sorted,
/// disjoint and inside [-1, 1], values in [0, rho_max], t_end > 0.
void validate(const RunConfig& config);

}  // namespace hughes::cli
