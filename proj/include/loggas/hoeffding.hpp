#ifndef LOGGAS_HOEFFDING_HPP
#define LOGGAS_HOEFFDING_HPP

#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/grid_measure.hpp"
#include "loggas/interaction.hpp"

namespace loggas {

// h_mu(s) = int h(t - s) dmu(t), by exact summation over cell midpoints.
double convolve_at(const InteractionPotential& h, const GridMeasure& mu, double s);
std::vector<double> convolve(const InteractionPotential& h, const GridMeasure& mu,
                             const std::vector<double>& eval_points);
// d/ds h_mu(s) = -int h'(t - s) dmu(t).
double convolve_deriv_at(const InteractionPotential& h, const GridMeasure& mu, double s);

// h_mumu = int int h(t - s) dmu(t) dmu(s); nonnegative for positive
// semi-definite h.
double double_convolve(const InteractionPotential& h, const GridMeasure& mu);

// Centered two-body fluctuation of the Hoeffding split of sum_{i<j} h(x_i-x_j):
//   U(x) = -1/2 * sum_{i,j=1..N} ( h(x_i-x_j) - [h_mu(x_i) + h_mu(x_j) - h_mumu] ),
// the double sum running over all pairs including i == j. Direct O(N^2) form.
double u_direct(const Configuration& x, const InteractionPotential& h, const GridMeasure& mu);

// Gradient of U: component l is -sum_j h'(x_l - x_j) + N * d/ds h_mu(x_l).
std::vector<double> grad_u(const Configuration& x, const InteractionPotential& h, const GridMeasure& mu);

struct FourierQuadrature {
  double half_width = 0.0;  // 0 = choose from the transform's tail decay
  int panels = 0;           // 0 = choose from the window size and max |x_j|
  int nodes_per_panel = 24;
  double tail_tolerance = 1e-8;  // warn when the window truncation bound exceeds this
};

// Fourier form of the same statistic:
//   U(x) = -(2 sqrt(2 pi))^{-1} int |S(t) - N phi_mu(t)|^2 hhat(t) dt,
// with S(t) = sum_j e^{i t x_j} and phi_mu the characteristic function of mu
// (for even mu this is the familiar centered-cosine plus sine form). Evaluated
// by composite Gauss-Legendre quadrature over [-T, T]; warns on std::cerr when
// the tail bound of the truncation exceeds quad.tail_tolerance.
double u_fourier(const Configuration& x, const InteractionPotential& h, const GridMeasure& mu,
                 const FourierQuadrature& quad = {});

// Bound on the truncation error of u_fourier outside [-T, T].
double u_fourier_tail_bound(const InteractionPotential& h, double half_width, int n);

}  // namespace loggas

#endif
