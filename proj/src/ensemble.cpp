#include "loggas/ensemble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace loggas {

EnsembleSpec EnsembleSpec::make(int n, double beta, ExternalField field, InteractionPotential interaction) {
  if (n < 1) throw std::invalid_argument("EnsembleSpec: N must be at least 1");
  if (!(beta > 0.0)) throw std::invalid_argument("EnsembleSpec: beta must be positive");
  if (!field.growth_ok(beta))
    throw std::invalid_argument("EnsembleSpec: field fails the growth proxy Q(L) > beta*log(L)");
  EnsembleSpec spec;
  spec.n = n;
  spec.beta = beta;
  spec.admissible = field.alpha_q() > interaction.alpha_h();
  spec.field = std::move(field);
  spec.interaction = std::move(interaction);
  return spec;
}

double hamiltonian(const Configuration& x, const EnsembleSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n);
  if (x.positions.size() != n) throw std::invalid_argument("hamiltonian: configuration size mismatch");
  for (double v : x.positions)
    if (!std::isfinite(v)) throw std::invalid_argument("hamiltonian: positions must be finite");

  const auto& pos = x.positions;
  double one_body = 0.0;
  for (double v : pos) one_body += spec.field(v);
  double acc = static_cast<double>(spec.n) * one_body;

  const bool has_h = !spec.interaction.is_zero();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pos[i] - pos[j];
      if (d == 0.0) return std::numeric_limits<double>::infinity();
      acc -= spec.beta * std::log(std::abs(d));
      if (has_h) acc += spec.interaction(d);
    }
  }
  return acc;
}

std::vector<double> grad_hamiltonian(const Configuration& x, const EnsembleSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n);
  if (x.positions.size() != n) throw std::invalid_argument("grad_hamiltonian: configuration size mismatch");
  const auto& pos = x.positions;
  std::vector<double> g(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) g[l] = static_cast<double>(spec.n) * spec.field.deriv(pos[l]);

  const bool has_h = !spec.interaction.is_zero();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pos[i] - pos[j];
      if (d == 0.0) throw std::domain_error("grad_hamiltonian: coincident pair");
      const double rep = spec.beta / d;
      g[i] -= rep;
      g[j] += rep;
      if (has_h) {
        const double hp = spec.interaction.deriv(d);
        g[i] += hp;
        g[j] -= hp;
      }
    }
  }
  return g;
}

}  // namespace loggas
