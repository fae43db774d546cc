#include "loggas/hoeffding.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "loggas/quadrature.hpp"

namespace loggas {

namespace {

void require_normalized(const GridMeasure& mu) {
  if (!mu.is_normalized()) throw std::invalid_argument("measure must be normalized");
}

void require_finite(const Configuration& x) {
  for (double v : x.positions)
    if (!std::isfinite(v)) throw std::invalid_argument("positions must be finite");
}

}  // namespace

double convolve_at(const InteractionPotential& h, const GridMeasure& mu, double s) {
  require_normalized(mu);
  if (h.is_zero()) return 0.0;
  double acc = 0.0;
  for (std::size_t c = 0; c < mu.n_cells(); ++c) acc += mu.weights()[c] * h(mu.midpoint(c) - s);
  return acc;
}

std::vector<double> convolve(const InteractionPotential& h, const GridMeasure& mu,
                             const std::vector<double>& eval_points) {
  require_normalized(mu);
  std::vector<double> out(eval_points.size(), 0.0);
  if (h.is_zero()) return out;
  for (std::size_t k = 0; k < eval_points.size(); ++k) {
    double acc = 0.0;
    for (std::size_t c = 0; c < mu.n_cells(); ++c) acc += mu.weights()[c] * h(mu.midpoint(c) - eval_points[k]);
    out[k] = acc;
  }
  return out;
}

double convolve_deriv_at(const InteractionPotential& h, const GridMeasure& mu, double s) {
  require_normalized(mu);
  if (h.is_zero()) return 0.0;
  double acc = 0.0;
  for (std::size_t c = 0; c < mu.n_cells(); ++c) acc -= mu.weights()[c] * h.deriv(mu.midpoint(c) - s);
  return acc;
}

double double_convolve(const InteractionPotential& h, const GridMeasure& mu) {
  require_normalized(mu);
  if (h.is_zero()) return 0.0;
  const auto n = mu.n_cells();
  double acc = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    // diagonal once, off-diagonal pairs twice by symmetry
    acc += mu.weights()[c] * mu.weights()[c] * h(0.0);
    for (std::size_t d = c + 1; d < n; ++d)
      acc += 2.0 * mu.weights()[c] * mu.weights()[d] * h(mu.midpoint(c) - mu.midpoint(d));
  }
  return acc;
}

double u_direct(const Configuration& x, const InteractionPotential& h, const GridMeasure& mu) {
  require_normalized(mu);
  require_finite(x);
  if (h.is_zero()) return 0.0;
  const auto n = x.positions.size();
  const auto& pos = x.positions;

  double pair_sum = static_cast<double>(n) * h(0.0);  // i == j diagonal
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pair_sum += 2.0 * h(pos[i] - pos[j]);

  double one_body = 0.0;
  for (double v : pos) one_body += convolve_at(h, mu, v);

  const double hmm = double_convolve(h, mu);
  const double nn = static_cast<double>(n);
  return -0.5 * (pair_sum - 2.0 * nn * one_body + nn * nn * hmm);
}

std::vector<double> grad_u(const Configuration& x, const InteractionPotential& h, const GridMeasure& mu) {
  require_normalized(mu);
  require_finite(x);
  const auto n = x.positions.size();
  std::vector<double> g(n, 0.0);
  if (h.is_zero()) return g;
  const auto& pos = x.positions;
  for (std::size_t l = 0; l < n; ++l) {
    double acc = static_cast<double>(n) * convolve_deriv_at(h, mu, pos[l]);
    for (std::size_t j = 0; j < n; ++j) acc -= h.deriv(pos[l] - pos[j]);  // h' is odd, j == l adds 0
    g[l] = acc;
  }
  return g;
}

double u_fourier_tail_bound(const InteractionPotential& h, double half_width, int n) {
  // |S - N phi|^2 <= (2N)^2 pointwise.
  static const double inv_2s2pi = 1.0 / (2.0 * std::sqrt(2.0 * M_PI));
  const double nn = 2.0 * static_cast<double>(n);
  return inv_2s2pi * nn * nn * h.fourier_tail_bound(half_width);
}

double u_fourier(const Configuration& x, const InteractionPotential& h, const GridMeasure& mu,
                 const FourierQuadrature& quad) {
  require_normalized(mu);
  require_finite(x);
  if (h.is_zero()) return 0.0;
  const auto n = x.positions.size();
  const auto& pos = x.positions;
  const double nn = static_cast<double>(n);

  double half_width = quad.half_width;
  if (half_width <= 0.0) {
    // pick T so the truncation bound sits far below the tail tolerance
    half_width = h.fourier_half_width(quad.tail_tolerance * 1e-4 / (1.0 + nn * nn));
  }
  const double tail = u_fourier_tail_bound(h, half_width, static_cast<int>(n));
  if (tail > quad.tail_tolerance)
    std::cerr << "u_fourier: quadrature window [-" << half_width << ", " << half_width
              << "] too small, truncation bound " << tail << "\n";

  double max_abs = 0.0;
  for (double v : pos) max_abs = std::max(max_abs, std::abs(v));
  int panels = quad.panels;
  if (panels <= 0) {
    const double panel_width = std::min(1.0, 3.0 / (1.0 + max_abs));
    panels = std::max(8, static_cast<int>(std::ceil(2.0 * half_width / panel_width)));
  }

  const auto integrand = [&](double t) {
    double sum_cos = 0.0, sum_sin = 0.0;
    for (double v : pos) {
      sum_cos += std::cos(t * v);
      sum_sin += std::sin(t * v);
    }
    double mu_cos = 0.0, mu_sin = 0.0;
    for (std::size_t c = 0; c < mu.n_cells(); ++c) {
      mu_cos += mu.weights()[c] * std::cos(t * mu.midpoint(c));
      mu_sin += mu.weights()[c] * std::sin(t * mu.midpoint(c));
    }
    const double re = sum_cos - nn * mu_cos;
    const double im = sum_sin - nn * mu_sin;
    return (re * re + im * im) * h.fourier(t);
  };

  const double integral = integrate_composite_gl(integrand, -half_width, half_width, panels,
                                                 quad.nodes_per_panel);
  return -integral / (2.0 * std::sqrt(2.0 * M_PI));
}

}  // namespace loggas
