#ifndef LOGGAS_ENSEMBLE_HPP
#define LOGGAS_ENSEMBLE_HPP

#include <optional>
#include <vector>

#include "loggas/field.hpp"
#include "loggas/interaction.hpp"

namespace loggas {

// Full model definition: N particles with repulsion exponent beta, confined
// by N*Q and interacting through the pair term h. The target density is
//   prod_{i<j} |x_i - x_j|^beta * exp{-N sum Q(x_j) - sum_{i<j} h(x_i - x_j)}.
struct EnsembleSpec {
  int n = 1;
  double beta = 2.0;
  ExternalField field;
  InteractionPotential interaction;
  // alpha_Q > alpha_h. A rigorous certificate only when h is positive
  // semi-definite (or zero); advisory otherwise.
  bool admissible = false;

  static EnsembleSpec make(int n, double beta, ExternalField field,
                           InteractionPotential interaction = InteractionPotential());
  bool certified() const { return admissible && (interaction.is_zero() || interaction.positive_semidefinite()); }
};

struct Configuration {
  std::vector<double> positions;
  std::optional<double> energy;

  Configuration() = default;
  explicit Configuration(std::vector<double> pos) : positions(std::move(pos)) {}
  int size() const { return static_cast<int>(positions.size()); }
};

// Energy H(x) = N sum_j Q(x_j) - beta sum_{i<j} log|x_i-x_j| + sum_{i<j} h(x_i-x_j),
// so that the density is proportional to exp(-H). Returns +infinity when two
// positions coincide exactly; throws on non-finite input.
double hamiltonian(const Configuration& x, const EnsembleSpec& spec);

// Component l: N Q'(x_l) - beta sum_{j != l} 1/(x_l - x_j) + sum_{j != l} h'(x_l - x_j).
// Throws on coincident pairs (gradient undefined there).
std::vector<double> grad_hamiltonian(const Configuration& x, const EnsembleSpec& spec);

}  // namespace loggas

#endif
