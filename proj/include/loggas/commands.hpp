#ifndef LOGGAS_COMMANDS_HPP
#define LOGGAS_COMMANDS_HPP

#include <stdexcept>
#include <string>

#include "loggas/config.hpp"
#include "loggas/equilibrium.hpp"

namespace loggas {

// Exit codes of the harness.
namespace exit_code {
constexpr int ok = 0;
constexpr int config = 1;
constexpr int solver = 2;
constexpr int missing_artifact = 3;
constexpr int incompatible_inputs = 4;
constexpr int checks_failed = 5;
}  // namespace exit_code

class MissingArtifactError : public std::runtime_error {
public:
  explicit MissingArtifactError(const std::string& what) : std::runtime_error(what) {}
};

class IncompatibleInputsError : public std::runtime_error {
public:
  explicit IncompatibleInputsError(const std::string& what) : std::runtime_error(what) {}
};

struct SampleOptions {
  std::uint64_t interrupt_after = 0;  // stop after this many retained samples (testing hook)
  int threads = 1;
};

// eqsolve: equilibrium / self-consistent solve -> equilibrium.csv + manifest.
int cmd_eqsolve(const ExperimentConfig& config);
// sample: chains or tridiagonal draws -> samples.csv (+ chain_state.txt) + manifest.
int cmd_sample(const ExperimentConfig& config, const SampleOptions& options = {});
// stats: density, spacings, correlations, importance diagnostics -> CSVs + SVGs + manifest.
int cmd_stats(const ExperimentConfig& config, int threads = 1);
// stats --trend: aggregate stats_summary.csv rows from several run directories
// into trend.csv and an N-trend plot under config.out_dir.
int cmd_stats_trend(const ExperimentConfig& config, const std::vector<std::string>& run_dirs);
// compare: modified-vs-reference verdict table; 0 iff all checks pass.
int cmd_compare(const ExperimentConfig& config, const std::string& file_a, const std::string& file_b,
                bool force = false);

// Shared artifact helpers.
void write_equilibrium_csv(const std::string& path, const EquilibriumSolution& solution);
std::pair<GridMeasure, std::vector<double>> read_equilibrium_csv(const std::string& path);

// Equilibrium of the configured (possibly interacting) ensemble.
SelfConsistentResult solve_for_config(const ExperimentConfig& config);
// Equilibrium of the reference Gaussian beta-ensemble at the configured beta.
EquilibriumSolution gaussian_equilibrium(double beta, std::size_t n_cells = 1024);

}  // namespace loggas

#endif
