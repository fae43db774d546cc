#include "loggas/sampling_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace loggas {

GridMeasure quadrature_oracle(const EnsembleSpec& spec, const GridSpec& grid, double energy_offset) {
  if (spec.n > 3) throw std::invalid_argument("quadrature_oracle: only N <= 3 is tractable");
  const auto m = grid.n_cells;
  const double nn = static_cast<double>(spec.n);
  const auto& Q = spec.field;
  const auto& h = spec.interaction;
  const bool has_h = !h.is_zero();

  std::vector<double> q_vals(m), t_vals(m);
  for (std::size_t c = 0; c < m; ++c) {
    t_vals[c] = grid.midpoint(c);
    q_vals[c] = Q(t_vals[c]);
  }

  // log of the pair factor |d|^beta e^{-h(d)}; -inf marks a coincidence.
  auto log_pair = [&](double d) {
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    double v = spec.beta * std::log(std::abs(d));
    if (has_h) v -= h(d);
    return v;
  };

  std::vector<double> weights(m, 0.0);
  if (spec.n == 1) {
    for (std::size_t c = 0; c < m; ++c) weights[c] = std::exp(-nn * q_vals[c] + energy_offset);
  } else if (spec.n == 2) {
    for (std::size_t c = 0; c < m; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double lp = log_pair(t_vals[c] - t_vals[j]);
        if (!std::isfinite(lp)) continue;
        acc += std::exp(lp - nn * (q_vals[c] + q_vals[j]) + energy_offset);
      }
      weights[c] = acc;
    }
  } else {
    for (std::size_t c = 0; c < m; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double lp_cj = log_pair(t_vals[c] - t_vals[j]);
        if (!std::isfinite(lp_cj)) continue;
        const double base = lp_cj - nn * (q_vals[c] + q_vals[j]);
        for (std::size_t k = 0; k < m; ++k) {
          const double lp = log_pair(t_vals[c] - t_vals[k]) + log_pair(t_vals[j] - t_vals[k]);
          if (!std::isfinite(lp)) continue;
          acc += std::exp(base + lp - nn * q_vals[k] + energy_offset);
        }
      }
      weights[c] = acc;
    }
  }
  return GridMeasure::normalized(grid.left, grid.right, std::move(weights));
}

}  // namespace loggas
