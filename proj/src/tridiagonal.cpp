#include "loggas/tridiagonal.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "loggas/mcmc.hpp"

namespace loggas {

std::vector<double> tridiagonal_gaussian_beta(int n, double beta, std::mt19937_64& gen) {
  if (n < 1) throw std::invalid_argument("tridiagonal_gaussian_beta: N must be at least 1");
  if (!(beta > 0.0)) throw std::invalid_argument("tridiagonal_gaussian_beta: beta must be positive");

  Eigen::VectorXd diag(n), subdiag(std::max(0, n - 1));
  for (int i = 0; i < n; ++i) diag(i) = draw_normal(gen);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n - 1; ++i) subdiag(i) = inv_sqrt2 * draw_chi(gen, beta * static_cast<double>(n - 1 - i));

  std::vector<double> out(static_cast<std::size_t>(n));
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  if (n == 1) {
    out[0] = scale * diag(0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();  // ascending
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = scale * ev(i);
  return out;
}

Configuration tridiagonal_gaussian_beta(int n, double beta, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return Configuration(tridiagonal_gaussian_beta(n, beta, gen));
}

std::vector<std::vector<double>> tridiagonal_draws(int n, double beta, std::uint64_t seed,
                                                   std::size_t n_draws) {
  std::mt19937_64 gen(seed);
  std::vector<std::vector<double>> out;
  out.reserve(n_draws);
  for (std::size_t k = 0; k < n_draws; ++k) out.push_back(tridiagonal_gaussian_beta(n, beta, gen));
  return out;
}

}  // namespace loggas
