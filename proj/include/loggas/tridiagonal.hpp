#ifndef LOGGAS_TRIDIAGONAL_HPP
#define LOGGAS_TRIDIAGONAL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "loggas/ensemble.hpp"

namespace loggas {

// One draw from the Gaussian beta-ensemble with density
//   prod |x_i-x_j|^beta exp(-N sum x_j^2) / Z,
// via the symmetric tridiagonal matrix with standard-normal diagonal and
// chi_{beta(N-1)}, ..., chi_beta off-diagonal entries divided by sqrt(2),
// whose spectrum follows prod |l_i-l_j|^beta exp(-sum l_i^2 / 2); the
// eigenvalues are rescaled by 1/sqrt(2N) to match the target normalization
// (see README for the derivation). Output sorted ascending.
std::vector<double> tridiagonal_gaussian_beta(int n, double beta, std::mt19937_64& gen);
Configuration tridiagonal_gaussian_beta(int n, double beta, std::uint64_t seed);

// n_draws sorted rows from a single generator stream.
std::vector<std::vector<double>> tridiagonal_draws(int n, double beta, std::uint64_t seed,
                                                   std::size_t n_draws);

}  // namespace loggas

#endif
