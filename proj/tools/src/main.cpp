#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hughes/errors.hpp"
#include "hughes_cli/commands.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Follow-the-leader and Godunov solvers for the 1D Hughes model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate-ftl", "Run the particle scheme; writes snapshots, xi, events and particles CSV"},
      {"simulate-godunov", "Run the Godunov reference; writes snapshots and xi CSV"},
      {"compare", "Run both solvers and write comparison.csv"},
      {"analyze", "Print TV, L, C, Q, the small-data verdict and Riemann diagnostics"},
      {"atomize", "Write the initial particle positions"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "INI run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides [output] directory)");
  }
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    auto config = hughes::cli::load_config(config_path);
    if (!out_dir.empty()) config.output_directory = out_dir;

    if (command == "simulate-ftl") {
      hughes::cli::simulate_ftl(config);
    } else if (command == "simulate-godunov") {
      hughes::cli::simulate_godunov(config);
    } else if (command == "compare") {
      const auto report = hughes::cli::compare(config);
      fmt::print("max L1 distance {:.6g}, max |xi difference| {:.6g}\n", report.max_l1(), report.max_xi_diff());
    } else if (command == "analyze") {
      hughes::cli::analyze(config, std::cout);
    } else {
      hughes::cli::dump_atomization(config);
    }
  } catch (const hughes::cli::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const hughes::DomainError& e) {
    fmt::print(stderr, "invalid input: {}\n", e.what());
    return kConfigError;
  } catch (const hughes::NumericalError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
