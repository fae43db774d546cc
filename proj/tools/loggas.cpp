// Command-line harness: eqsolve | sample | stats | compare | validate.

#include <CLI11.hpp>
#include <iostream>

#include "loggas/acceptance.hpp"
#include "loggas/commands.hpp"
#include "loggas/mcmc.hpp"

using namespace loggas;

int main(int argc, char** argv) {
  CLI::App app{"loggas: beta-ensembles with generalized repulsion interactions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed_override = 0;
  bool has_seed = false;
  int threads = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--seed", seed_override, "seed override")->each([&](const std::string&) { has_seed = true; });
    cmd->add_option("--threads", threads, "worker threads for chain fan-out");
  };

  auto* eqsolve = app.add_subcommand("eqsolve", "solve the (self-consistent) equilibrium measure");
  add_common(eqsolve);

  auto* sample = app.add_subcommand("sample", "draw configurations from the configured ensemble");
  add_common(sample);
  std::uint64_t interrupt_after = 0;
  sample->add_option("--interrupt-after", interrupt_after,
                     "stop after this many retained samples, leaving a resumable state");

  auto* stats = app.add_subcommand("stats", "estimate densities, spacings and correlations");
  add_common(stats);
  std::vector<std::string> trend_dirs;
  stats->add_option("--trend", trend_dirs,
                    "aggregate stats_summary.csv from these run directories into an N-trend report");

  auto* compare = app.add_subcommand("compare", "compare two sample files per the configured plan");
  add_common(compare);
  std::string file_a, file_b;
  bool force = false;
  compare->add_option("--a", file_a, "modified-ensemble sample file")->required();
  compare->add_option("--b", file_b, "reference-ensemble sample file")->required();
  compare->add_flag("--force", force, "proceed despite mismatched N or beta");

  auto* validate = app.add_subcommand("validate", "run the full verification suite");
  std::vector<int> criteria;
  validate->add_option("--criteria", criteria, "criterion numbers (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) {
      auto results = run_acceptance(criteria, std::cout);
      for (const auto& r : results)
        if (!r.passed) return exit_code::checks_failed;
      return exit_code::ok;
    }

    ExperimentConfig config = load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (has_seed) config.seed = seed_override;

    if (app.got_subcommand(eqsolve)) return cmd_eqsolve(config);
    if (app.got_subcommand(sample)) {
      SampleOptions options;
      options.interrupt_after = interrupt_after;
      options.threads = threads;
      return cmd_sample(config, options);
    }
    if (app.got_subcommand(stats)) {
      if (!trend_dirs.empty()) return cmd_stats_trend(config, trend_dirs);
      return cmd_stats(config, threads);
    }
    if (app.got_subcommand(compare)) return cmd_compare(config, file_a, file_b, force);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::config;
  } catch (const MissingArtifactError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::missing_artifact;
  } catch (const IncompatibleInputsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::incompatible_inputs;
  } catch (const WindowTooSmallError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return exit_code::solver;
  } catch (const NonContractionError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return exit_code::solver;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return exit_code::solver;
  } catch (const ChainError& e) {
    std::cerr << "sampler error: " << e.what() << "\n";
    return exit_code::solver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::solver;
  }
  return exit_code::ok;
}
