#include "hughes_cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace hughes::cli {

namespace pt = boost::property_tree;

namespace {

std::vector<double> parse_numbers(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("{}: '{}' is not a number", key, token));
    }
  }
  return out;
}

template <typename T>
std::optional<T> get_optional(const pt::ptree& tree, const std::string& key) {
  const auto raw = tree.get_optional<std::string>(key);
  if (!raw) return std::nullopt;
  try {
    return tree.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError(fmt::format("{}: cannot parse '{}'", key, *raw));
  }
}

std::vector<DensityPiece> parse_pieces(const std::string& text) {
  std::vector<DensityPiece> pieces;
  std::vector<std::string> items;
  boost::split(items, text, boost::is_any_of(","));
  for (auto& item : items) {
    boost::trim(item);
    if (item.empty()) continue;
    const auto numbers = parse_numbers("initial.pieces", item);
    if (numbers.size() != 3)
      throw ConfigError(fmt::format("initial.pieces: '{}' must be 'left right value'", item));
    pieces.push_back({numbers[0], numbers[1], numbers[2]});
  }
  return pieces;
}

}  // namespace

std::size_t RunConfig::particle_gaps() const {
  if (particles) return *particles;
  if (n_dyadic) return std::size_t{1} << *n_dyadic;
  if (riemann) return riemann->n_minus + riemann->n_plus;
  return 0;
}

std::vector<double> RunConfig::snapshot_times() const { return uniform_times(0.0, t_end, snapshot_count - 1); }

IntegratorConfig RunConfig::integrator() const {
  IntegratorConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = abs_tol;
  cfg.policy = crossing_policy;
  cfg.snapshot_times = snapshot_times();
  return cfg;
}

GodunovConfig RunConfig::godunov() const {
  GodunovConfig cfg;
  cfg.cfl = cfl;
  cfg.snapshot_times = snapshot_times();
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
  }

  RunConfig cfg;

  const auto velocity = tree.get<std::string>("model.velocity", "linear");
  if (velocity == "linear") {
    cfg.model.velocity = VelocityKind::linear;
  } else if (velocity == "polynomial") {
    cfg.model.velocity = VelocityKind::polynomial;
    cfg.model.velocity_coefficients =
        parse_numbers("model.velocity_coefficients", tree.get<std::string>("model.velocity_coefficients", ""));
  } else {
    throw ConfigError(fmt::format("model.velocity: unknown kind '{}'", velocity));
  }
  const auto cost = tree.get<std::string>("model.cost", "reciprocal");
  if (cost == "reciprocal") {
    cfg.model.cost = CostKind::reciprocal;
  } else if (cost == "constant") {
    cfg.model.cost = CostKind::constant;
  } else if (cost == "polynomial") {
    cfg.model.cost = CostKind::polynomial;
    cfg.model.cost_coefficients =
        parse_numbers("model.cost_coefficients", tree.get<std::string>("model.cost_coefficients", ""));
  } else {
    throw ConfigError(fmt::format("model.cost: unknown kind '{}'", cost));
  }
  cfg.model.rho_max = get_optional<double>(tree, "model.rho_max").value_or(cfg.model.rho_max);

  cfg.initial = parse_pieces(tree.get<std::string>("initial.pieces", ""));

  cfg.particles = get_optional<std::size_t>(tree, "discretization.particles");
  cfg.n_dyadic = get_optional<int>(tree, "discretization.n_dyadic");
  if (const auto raw = tree.get_optional<std::string>("discretization.riemann")) {
    const auto numbers = parse_numbers("discretization.riemann", *raw);
    if (numbers.size() != 2 || numbers[0] < 1 || numbers[1] < 1 || numbers[0] != std::floor(numbers[0]) ||
        numbers[1] != std::floor(numbers[1]))
      throw ConfigError("discretization.riemann: expected two positive integers 'n_minus n_plus'");
    cfg.riemann = RiemannSplit{static_cast<std::size_t>(numbers[0]), static_cast<std::size_t>(numbers[1])};
  }
  cfg.num_cells = get_optional<std::size_t>(tree, "discretization.num_cells");

  cfg.t_end = get_optional<double>(tree, "time.t_end").value_or(cfg.t_end);
  cfg.snapshot_count = get_optional<std::size_t>(tree, "time.snapshots").value_or(cfg.snapshot_count);

  cfg.rel_tol = get_optional<double>(tree, "integrator.rel_tol").value_or(cfg.rel_tol);
  cfg.abs_tol = get_optional<double>(tree, "integrator.abs_tol").value_or(cfg.abs_tol);
  cfg.cfl = get_optional<double>(tree, "integrator.cfl").value_or(cfg.cfl);
  const auto policy = tree.get<std::string>("integrator.crossing_policy", "switch");
  if (policy == "switch") {
    cfg.crossing_policy = CrossingPolicy::switch_direction;
  } else if (policy == "halt") {
    cfg.crossing_policy = CrossingPolicy::halt;
  } else {
    throw ConfigError(fmt::format("integrator.crossing_policy: expected 'switch' or 'halt', got '{}'", policy));
  }

  cfg.output_directory = tree.get<std::string>("output.directory", ".");
  cfg.prefix = tree.get<std::string>("output.prefix", "");

  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate(const RunConfig& config) {
  if (config.initial.empty()) throw ConfigError("initial.pieces: at least one piece is required");
  if (!(config.model.rho_max > 0.0 && config.model.rho_max <= 1.0))
    throw ConfigError("model.rho_max must lie in (0, 1]");
  double cursor = -1.0;
  for (const auto& p : config.initial) {
    if (!(p.left < p.right)) throw ConfigError(fmt::format("initial.pieces: empty interval [{}, {}]", p.left, p.right));
    if (p.left < cursor)
      throw ConfigError(fmt::format("initial.pieces: [{}, {}] overlaps its predecessor or leaves [-1, 1]", p.left,
                                    p.right));
    if (p.right > 1.0) throw ConfigError(fmt::format("initial.pieces: [{}, {}] leaves [-1, 1]", p.left, p.right));
    if (!(p.value >= 0.0 && p.value <= config.model.rho_max))
      throw ConfigError(fmt::format("initial.pieces: value {} outside [0, rho_max = {}]", p.value, config.model.rho_max));
    cursor = p.right;
  }
  const int schemes = static_cast<int>(config.particles.has_value()) + static_cast<int>(config.n_dyadic.has_value()) +
                      static_cast<int>(config.riemann.has_value());
  if (schemes != 1)
    throw ConfigError("discretization: set exactly one of 'particles', 'n_dyadic' or 'riemann'");
  if (config.particles && *config.particles < 2) throw ConfigError("discretization.particles must be at least 2");
  if (config.n_dyadic && (*config.n_dyadic < 1 || *config.n_dyadic > 24))
    throw ConfigError("discretization.n_dyadic must lie in [1, 24]");
  if (config.num_cells && *config.num_cells < 10) throw ConfigError("discretization.num_cells must be at least 10");
  if (!(config.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
  if (config.snapshot_count < 2) throw ConfigError("time.snapshots must be at least 2");
  if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0)) throw ConfigError("integrator tolerances must be positive");
  if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw ConfigError("integrator.cfl must lie in (0, 1]");
}

}  // namespace hughes::cli
