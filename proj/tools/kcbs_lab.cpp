// kcbs_lab: command-line runner for the pentagram / hidden-variable experiments.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kcbs/harness.hpp"

using namespace kcbs::harness;

int main(int argc, char** argv) {
  CLI::App app{"KCBS pentagram contextuality laboratory"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string command;
  std::string state = "symmetric";
  std::uint64_t samples = 0;
  std::uint64_t seed = ExperimentConfig{}.seed;
  double tolerance = ExperimentConfig{}.tolerance;
  std::string format = "json";
  std::string out_path;
  unsigned steps = ExperimentConfig{}.steps;
  unsigned workers = 1;

  app.add_option("command", command, "pentagram | qm-sum | bounds | hvm-corr | hvm-sample | verify | sweep")
      ->required();
  auto* state_opt = app.add_option("--state", state, "symmetric | dir:<k> | vec:<x>,<y>,<z> | random:<n>");
  auto* samples_opt = app.add_option("--samples", samples, "Monte Carlo draws per context pair");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--tolerance", tolerance, "exact-path comparison tolerance");
  app.add_option("--format", format, "json | csv");
  auto* out_opt = app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--steps", steps, "sweep steps");
  app.add_option("--workers", workers, "threads for Monte Carlo sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsageError;
  }

  ExperimentConfig config;
  try {
    config.command = parse_command(command);
    config.format = parse_format(format);
    if (*state_opt) {
      config.state = parse_state_spec(state);
    } else if (config.command == Command::verify) {
      config.state.kind = StateSpec::Kind::random;
      config.state.count = kDefaultRandomStates;
    }
    if (*samples_opt) {
      if (samples == 0) throw UsageError("--samples must be at least 1");
      config.samples = samples;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
  config.seed = seed;
  config.tolerance = tolerance;
  config.steps = steps;
  config.workers = workers;
  if (*out_opt) config.output_path = out_path;

  return run(config, std::cout, std::cerr);
}
