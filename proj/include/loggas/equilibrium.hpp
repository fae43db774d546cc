#ifndef LOGGAS_EQUILIBRIUM_HPP
#define LOGGAS_EQUILIBRIUM_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loggas/field.hpp"
#include "loggas/grid_measure.hpp"
#include "loggas/interaction.hpp"

namespace loggas {

struct GridSpec {
  double left = -4.0;
  double right = 4.0;
  std::size_t n_cells = 1024;

  double cell_width() const { return (right - left) / static_cast<double>(n_cells); }
  double midpoint(std::size_t c) const { return left + (static_cast<double>(c) + 0.5) * cell_width(); }
  // Default window [-3 r0, 3 r0] with r0 = sqrt(beta), the Gaussian support radius.
  static GridSpec default_for(double beta, std::size_t n_cells = 1024);
};

// Symmetric Toeplitz matrix K[i][j] = -log|t_i - t_j| on a uniform grid, with
// the exact cell average 1 - log(dx/2) on the diagonal. Stored as its first
// row.
class LogKernel {
public:
  explicit LogKernel(const GridSpec& grid);
  std::size_t size() const { return row_.size(); }
  double entry(std::size_t i, std::size_t j) const { return row_[i >= j ? i - j : j - i]; }
  void matvec(const std::vector<double>& w, std::vector<double>& out) const;
  double quadratic_form(const std::vector<double>& w) const;

private:
  std::vector<double> row_;
};

class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual(last_residual) {}
  double last_residual;
};

class WindowTooSmallError : public std::runtime_error {
public:
  explicit WindowTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

class NonContractionError : public std::runtime_error {
public:
  explicit NonContractionError(const std::string& what) : std::runtime_error(what) {}
};

// Discretization of I_{V,beta}: minimize <V, w> + (beta/2) <w, K w> over the
// probability simplex.
class EquilibriumProblem {
public:
  EquilibriumProblem(std::vector<double> field_values, double beta, GridSpec grid);

  const std::vector<double>& field_values() const { return field_; }
  double beta() const { return beta_; }
  const GridSpec& grid() const { return grid_; }
  const LogKernel& log_kernel() const { return kernel_; }

  double objective(const std::vector<double>& w) const;

private:
  std::vector<double> field_;
  double beta_;
  GridSpec grid_;
  LogKernel kernel_;
};

struct EquilibriumSolution {
  GridMeasure mu;
  std::vector<double> effective_potential;  // F(t) = V(t) + beta (K w)(t)
  double lagrange_constant = 0.0;
  double el_residual = 0.0;
  int iterations = 0;
  double objective = 0.0;
};

struct SolveOptions {
  double tol = 1e-9;
  int max_iterations = 60000;
  bool polish = true;                      // active-set refinement on the detected support
  double boundary_mass_limit = 1e-8;       // allowed weight in the outermost 5% of cells
  std::vector<double> warm_start;          // optional initial weights (same grid)
  // Test hook, called once per accepted iterate with (weights, objective).
  std::function<void(const std::vector<double>&, double)> on_iterate;
};

// Projected-gradient descent (Barzilai-Borwein step, exact line search along
// the feasible direction) over the simplex, with an optional active-set
// polish. Throws SolverError on non-convergence and WindowTooSmallError when
// the solution presses against the grid boundary.
EquilibriumSolution solve_equilibrium(const EquilibriumProblem& problem, const SolveOptions& options = {});
EquilibriumSolution solve_equilibrium(const EquilibriumProblem& problem, double tol);

// First-order certificate: F = V + beta K w must be constant on the support
// and no smaller off it. Returns (residual, lagrange_constant) where the
// residual is max_{support} |F - c| + max_{off} max(0, c - F).
std::pair<double, double> euler_lagrange_residual(const GridMeasure& mu, const std::vector<double>& field_values,
                                                  double beta);

// Euclidean projection onto {w >= 0, sum w = 1}.
void project_onto_simplex(std::vector<double>& w);

struct SelfConsistentOptions {
  double tol = 1e-6;          // L1 stopping rule for successive iterates
  double damping = 0.5;       // theta in (0, 1]
  int max_outer = 300;
  SolveOptions inner;
};

struct SelfConsistentResult {
  GridMeasure mu_star;             // damped fixed-point iterate
  EquilibriumSolution equilibrium; // exact solve at V = Q + h_{mu_star}
  double self_residual = 0.0;      // L1(mu_star, equilibrium.mu)
  int outer_iterations = 0;
  std::vector<double> l1_steps;    // successive L1 differences
};

// Fixed point mu = EqMeasure(Q + h_mu) by damped iteration from the
// equilibrium measure of Q alone. Throws NonContractionError when the L1
// differences grow for 5 consecutive iterations.
SelfConsistentResult self_consistent_solve(const ExternalField& Q, const InteractionPotential& h,
                                           double beta, const GridSpec& grid,
                                           const SelfConsistentOptions& options = {});

// Retry wrapper that widens the window (same cell count) until the boundary
// check passes.
SelfConsistentResult self_consistent_solve_auto(const ExternalField& Q, const InteractionPotential& h,
                                                double beta, GridSpec grid,
                                                const SelfConsistentOptions& options = {},
                                                int max_enlargements = 6);

std::vector<double> field_on_grid(const ExternalField& Q, const GridSpec& grid);

}  // namespace loggas

#endif
