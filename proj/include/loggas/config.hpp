#ifndef LOGGAS_CONFIG_HPP
#define LOGGAS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/equilibrium.hpp"

namespace loggas {

class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, const std::string& field, const std::string& message)
      : std::runtime_error("config line " + std::to_string(line) + ", field '" + field + "': " + message),
        line(line), field(field) {}
  int line;
  std::string field;
};

// Flat 'key = value' experiment description. Every key has a default; unknown
// keys and malformed values raise ConfigError with the offending line.
struct ExperimentConfig {
  int version = 1;

  // ensemble
  int n = 200;
  double beta = 2.0;
  FieldKind field_kind = FieldKind::gaussian;
  std::vector<double> field_coeffs{1.0};
  double field_bound = 6.0;
  std::vector<double> interaction_amplitudes;  // empty = h == 0
  std::vector<double> interaction_widths;

  // grid (unset = auto window from beta)
  std::optional<double> grid_left;
  std::optional<double> grid_right;
  std::size_t grid_cells = 1024;

  // solver
  double solver_tol = 1e-9;
  double sc_tol = 2e-5;
  double damping = 0.5;

  // sampler
  std::string target = "modified";       // modified | comparison | gaussian
  std::string algorithm = "metropolis";  // metropolis | mala | tridiagonal
  std::uint64_t seed = 1;
  int chains = 1;
  std::uint64_t n_samples = 500;
  std::uint64_t burn_in = 0;  // 0 = schedule default
  std::uint64_t thin = 0;     // 0 = schedule default
  double initial_step = 0.5;
  std::uint64_t checkpoint_every = 0;  // 0 = no checkpointing

  // statistics plan
  std::vector<int> corr_k{1, 2};
  double xi = 0.5;
  double bulk_point = 0.0;
  int n_u = 16;
  double kde_bandwidth = 0.0;  // 0 = Silverman
  int spacing_bins = 40;
  double f1_radius = 3.0;
  double f2_radius = 2.0;
  double exp_lambda = 1.0;

  // output
  std::string out_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;

  ExternalField make_field() const;
  InteractionPotential make_interaction() const;
  EnsembleSpec make_spec() const;
  GridSpec make_grid() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace loggas

#endif
