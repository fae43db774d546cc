#include "loggas/equilibrium.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "loggas/hoeffding.hpp"

namespace loggas {

namespace {
constexpr double kSupportEps = 1e-12;
}

GridSpec GridSpec::default_for(double beta, std::size_t n_cells) {
  const double r0 = std::sqrt(beta);
  return GridSpec{-3.0 * r0, 3.0 * r0, n_cells};
}

LogKernel::LogKernel(const GridSpec& grid) : row_(grid.n_cells) {
  const double dx = grid.cell_width();
  row_[0] = 1.0 - std::log(dx / 2.0);  // exact cell average of -log|u|
  for (std::size_t m = 1; m < row_.size(); ++m)
    row_[m] = -std::log(static_cast<double>(m) * dx);
}

void LogKernel::matvec(const std::vector<double>& w, std::vector<double>& out) const {
  const auto n = row_.size();
  out.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = w[i];
    double acc = row_[0] * wi;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = row_[j - i];
      out[j] += k * wi;
      acc += k * w[j];
    }
    out[i] += acc;
  }
}

double LogKernel::quadratic_form(const std::vector<double>& w) const {
  std::vector<double> kw;
  matvec(w, kw);
  return std::inner_product(w.begin(), w.end(), kw.begin(), 0.0);
}

EquilibriumProblem::EquilibriumProblem(std::vector<double> field_values, double beta, GridSpec grid)
    : field_(std::move(field_values)), beta_(beta), grid_(grid), kernel_(grid) {
  if (field_.size() != grid_.n_cells) throw std::invalid_argument("EquilibriumProblem: field size mismatch");
  if (!(beta_ > 0.0)) throw std::invalid_argument("EquilibriumProblem: beta must be positive");
  if (grid_.n_cells < 64) throw std::invalid_argument("EquilibriumProblem: need at least 64 cells");
  for (double v : field_)
    if (!std::isfinite(v)) throw std::invalid_argument("EquilibriumProblem: field must be finite on the grid");
}

double EquilibriumProblem::objective(const std::vector<double>& w) const {
  return std::inner_product(field_.begin(), field_.end(), w.begin(), 0.0) +
         0.5 * beta_ * kernel_.quadratic_form(w);
}

void project_onto_simplex(std::vector<double>& w) {
  // sort-based Euclidean projection onto {w >= 0, sum w = 1}
  std::vector<double> u(w);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    const double test = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - test > 0.0) {
      rho = k + 1;
      theta = test;
    }
  }
  (void)rho;
  for (double& v : w) v = std::max(0.0, v - theta);
}

namespace {

// residual = max_{support} |F - c| + max_all max(0, c - F), c = sum w F
std::pair<double, double> residual_from_potential(const std::vector<double>& w, const std::vector<double>& F) {
  double c = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) c += w[i] * F[i];
  double on_support = 0.0, off_support = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > kSupportEps)
      on_support = std::max(on_support, std::abs(F[i] - c));
    else
      off_support = std::max(off_support, c - F[i]);
  }
  return {on_support + std::max(0.0, off_support), c};
}

void renormalize(std::vector<double>& w) {
  double mass = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= mass;
}

struct PolishResult {
  bool ok = false;
  std::vector<double> weights;
  std::vector<double> potential;
  double lagrange = 0.0;
};

// Equality-constrained solve on the detected support with active-set updates:
// beta K_SS w_S - lambda = -V_S, sum w_S = 1; cells leaving/entering the
// support are handled by dropping negatives and adding off-support cells
// whose potential dips below the level.
PolishResult polish_on_support(const EquilibriumProblem& prob, const std::vector<double>& w, double tol) {
  PolishResult result;
  const auto n = prob.grid().n_cells;
  const auto& V = prob.field_values();
  const auto& K = prob.log_kernel();
  const double beta = prob.beta();

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i)
    if (w[i] > kSupportEps) support.push_back(i);
  if (support.size() < 2 || support.size() > n / 2 + n / 4) return result;

  for (int round = 0; round < 60; ++round) {
    const auto m = support.size();
    Eigen::MatrixXd A(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) A(i, j) = beta * K.entry(support[i], support[j]);
      A(i, m) = -1.0;
      A(m, i) = 1.0;
      rhs(i) = -V[support[i]];
    }
    A(m, m) = 0.0;
    rhs(m) = 1.0;

    Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
    if (!sol.allFinite()) return result;

    bool negative = false;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < m; ++i) {
      if (sol(i) < -1e-14)
        negative = true;
      else
        kept.push_back(support[i]);
    }
    if (negative) {
      if (kept.size() < 2) return result;
      support.swap(kept);
      continue;
    }

    std::vector<double> cand(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) cand[support[i]] = std::max(0.0, sol(i));
    renormalize(cand);
    const double lambda = sol(m);

    // off-support optimality: F >= lambda - tol everywhere
    std::vector<double> F;
    K.matvec(cand, F);
    for (std::size_t i = 0; i < n; ++i) F[i] = V[i] + beta * F[i];
    std::vector<std::pair<double, std::size_t>> violations;
    for (std::size_t i = 0; i < n; ++i)
      if (cand[i] <= kSupportEps && F[i] < lambda - 0.1 * tol) violations.push_back({F[i], i});
    if (!violations.empty()) {
      std::sort(violations.begin(), violations.end());
      const std::size_t add = std::min<std::size_t>(violations.size(), 16);
      for (std::size_t k = 0; k < add; ++k) support.push_back(violations[k].second);
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()), support.end());
      continue;
    }

    result.ok = true;
    result.weights = std::move(cand);
    result.potential = std::move(F);
    result.lagrange = lambda;
    return result;
  }
  return result;
}

}  // namespace

EquilibriumSolution solve_equilibrium(const EquilibriumProblem& problem, double tol) {
  SolveOptions options;
  options.tol = tol;
  return solve_equilibrium(problem, options);
}

EquilibriumSolution solve_equilibrium(const EquilibriumProblem& problem, const SolveOptions& options) {
  const auto n = problem.grid().n_cells;
  const auto& V = problem.field_values();
  const auto& K = problem.log_kernel();
  const double beta = problem.beta();

  std::vector<double> w;
  if (!options.warm_start.empty()) {
    if (options.warm_start.size() != n) throw std::invalid_argument("solve_equilibrium: warm start size mismatch");
    w = options.warm_start;
    for (double& v : w) v = std::max(0.0, v);
    renormalize(w);
  } else {
    w.assign(n, 1.0 / static_cast<double>(n));
  }

  std::vector<double> Kw, g(n), d(n), Kd;
  K.matvec(w, Kw);
  for (std::size_t i = 0; i < n; ++i) g[i] = V[i] + beta * Kw[i];
  auto objective_of = [&](const std::vector<double>& ww, const std::vector<double>& gg) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += 0.5 * ww[i] * (V[i] + gg[i]);
    return acc;
  };
  double objective = objective_of(w, g);

  double bb_step = 1.0 / (beta * (std::abs(K.entry(0, 0)) + 1.0));
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;

  auto finish = [&](std::vector<double> weights, std::vector<double> potential) {
    auto [res, c] = residual_from_potential(weights, potential);
    GridMeasure mu = GridMeasure::normalized(problem.grid().left, problem.grid().right, weights);
    if (mu.boundary_mass(0.05) > options.boundary_mass_limit)
      throw WindowTooSmallError("solve_equilibrium: mass in the outermost 5% of cells exceeds " +
                                std::to_string(options.boundary_mass_limit));
    EquilibriumSolution out{std::move(mu), std::move(potential), c, res, iterations,
                            objective};
    return out;
  };

  if (options.on_iterate) options.on_iterate(w, objective);

  for (iterations = 0; iterations < options.max_iterations; ++iterations) {
    auto [res, c] = residual_from_potential(w, g);
    residual = res;
    if (residual <= options.tol) {
      if (options.polish) {
        auto polished = polish_on_support(problem, w, options.tol);
        if (polished.ok) {
          const double obj_p = problem.objective(polished.weights);
          if (obj_p <= objective + 1e-12 * (1.0 + std::abs(objective))) {
            objective = obj_p;
            if (options.on_iterate) options.on_iterate(polished.weights, objective);
            return finish(std::move(polished.weights), std::move(polished.potential));
          }
        }
      }
      return finish(w, g);
    }

    // periodic polish attempt once the support has localized
    if (options.polish && iterations > 0 && iterations % 40 == 0) {
      std::size_t support_count = 0;
      for (double v : w)
        if (v > kSupportEps) ++support_count;
      if (support_count < n / 2) {
        auto polished = polish_on_support(problem, w, options.tol);
        if (polished.ok) {
          const double obj_p = problem.objective(polished.weights);
          if (obj_p <= objective + 1e-12 * (1.0 + std::abs(objective))) {
            w = polished.weights;
            objective = obj_p;
            std::vector<double> F = polished.potential;
            auto [res_p, c_p] = residual_from_potential(w, F);
            if (options.on_iterate) options.on_iterate(w, objective);
            if (res_p <= options.tol) return finish(std::move(w), std::move(F));
            g = std::move(F);
            continue;
          }
        }
      }
    }

    // feasible direction from the projected gradient step
    for (std::size_t i = 0; i < n; ++i) d[i] = w[i] - bb_step * g[i];
    project_onto_simplex(d);
    double gd = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] -= w[i];
      gd += g[i] * d[i];
      dd += d[i] * d[i];
    }
    if (dd <= 0.0) return finish(w, g);

    K.matvec(d, Kd);
    double dKd = std::inner_product(d.begin(), d.end(), Kd.begin(), 0.0);

    // exact line search for the quadratic objective along the segment
    double t = 1.0;
    if (beta * dKd > 0.0) t = std::clamp(-gd / (beta * dKd), 0.0, 1.0);
    if (t == 0.0) t = 1e-3;

    for (std::size_t i = 0; i < n; ++i) {
      w[i] += t * d[i];
      g[i] += t * beta * Kd[i];
    }
    if (iterations % 128 == 0) renormalize(w);
    objective += t * gd + 0.5 * beta * t * t * dKd;
    if (options.on_iterate) options.on_iterate(w, objective);

    bb_step = dKd > 0.0 ? std::clamp(dd / (beta * dKd), 1e-10, 1e10) : 1e10;
  }

  throw SolverError("solve_equilibrium: no convergence after " + std::to_string(options.max_iterations) +
                        " iterations (residual " + std::to_string(residual) + ")",
                    residual);
}

std::pair<double, double> euler_lagrange_residual(const GridMeasure& mu, const std::vector<double>& field_values,
                                                  double beta) {
  if (!mu.is_normalized()) throw std::invalid_argument("euler_lagrange_residual: measure must be normalized");
  if (field_values.size() != mu.n_cells())
    throw std::invalid_argument("euler_lagrange_residual: field size mismatch");
  GridSpec grid{mu.left(), mu.right(), mu.n_cells()};
  LogKernel kernel(grid);
  std::vector<double> F;
  kernel.matvec(mu.weights(), F);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] = field_values[i] + beta * F[i];
  return residual_from_potential(mu.weights(), F);
}

std::vector<double> field_on_grid(const ExternalField& Q, const GridSpec& grid) {
  std::vector<double> out(grid.n_cells);
  for (std::size_t c = 0; c < grid.n_cells; ++c) out[c] = Q(grid.midpoint(c));
  return out;
}

SelfConsistentResult self_consistent_solve(const ExternalField& Q, const InteractionPotential& h,
                                           double beta, const GridSpec& grid,
                                           const SelfConsistentOptions& options) {
  if (!(options.damping > 0.0 && options.damping <= 1.0))
    throw std::invalid_argument("self_consistent_solve: damping must lie in (0, 1]");
  const auto base_field = field_on_grid(Q, grid);
  EquilibriumProblem base_problem(base_field, beta, grid);
  EquilibriumSolution sol0 = solve_equilibrium(base_problem, options.inner);

  if (h.is_zero()) {
    GridMeasure mu0 = sol0.mu;
    return SelfConsistentResult{std::move(mu0), std::move(sol0), 0.0, 1, {}};
  }

  std::vector<double> midpoints(grid.n_cells);
  for (std::size_t c = 0; c < grid.n_cells; ++c) midpoints[c] = grid.midpoint(c);

  std::vector<double> w = sol0.mu.weights();
  double prev_step = std::numeric_limits<double>::infinity();
  int non_improving = 0;
  std::vector<double> l1_steps;

  for (int outer = 1; outer <= options.max_outer; ++outer) {
    GridMeasure mu_k = GridMeasure::normalized(grid.left, grid.right, w);
    const auto hmu = convolve(h, mu_k, midpoints);
    std::vector<double> field(grid.n_cells);
    for (std::size_t c = 0; c < grid.n_cells; ++c) field[c] = base_field[c] + hmu[c];

    SolveOptions inner = options.inner;
    inner.warm_start = w;
    EquilibriumProblem problem(field, beta, grid);
    EquilibriumSolution sol = solve_equilibrium(problem, inner);

    const double theta = options.damping;
    std::vector<double> next(grid.n_cells);
    double step = 0.0;
    for (std::size_t c = 0; c < grid.n_cells; ++c) {
      next[c] = (1.0 - theta) * w[c] + theta * sol.mu.weights()[c];
      step += std::abs(next[c] - w[c]);
    }
    l1_steps.push_back(step);

    // covers both growing steps and plateaus/cycles well above the tolerance
    if (step >= prev_step * 0.999 && step > 100.0 * options.tol) {
      if (++non_improving >= 5)
        throw NonContractionError(
            "self_consistent_solve: L1 differences stopped contracting for 5 consecutive "
            "iterations; the field may not dominate the interaction (raise alpha_Q or lower "
            "the damping)");
    } else {
      non_improving = 0;
    }
    prev_step = step;
    w = std::move(next);

    if (step <= options.tol) {
      GridMeasure mu_star = GridMeasure::normalized(grid.left, grid.right, w);
      const auto hstar = convolve(h, mu_star, midpoints);
      std::vector<double> field_star(grid.n_cells);
      for (std::size_t c = 0; c < grid.n_cells; ++c) field_star[c] = base_field[c] + hstar[c];
      SolveOptions inner_star = options.inner;
      inner_star.warm_start = mu_star.weights();
      EquilibriumProblem problem_star(field_star, beta, grid);
      EquilibriumSolution sol_star = solve_equilibrium(problem_star, inner_star);
      const double self_res = mu_star.l1_distance(sol_star.mu);
      return SelfConsistentResult{std::move(mu_star), std::move(sol_star), self_res, outer,
                                  std::move(l1_steps)};
    }
  }
  throw SolverError("self_consistent_solve: no fixed point after " + std::to_string(options.max_outer) +
                        " outer iterations (last step " + std::to_string(prev_step) + ")",
                    prev_step);
}

SelfConsistentResult self_consistent_solve_auto(const ExternalField& Q, const InteractionPotential& h,
                                                double beta, GridSpec grid,
                                                const SelfConsistentOptions& options,
                                                int max_enlargements) {
  for (int attempt = 0;; ++attempt) {
    try {
      return self_consistent_solve(Q, h, beta, grid, options);
    } catch (const WindowTooSmallError&) {
      if (attempt >= max_enlargements) throw;
      const double mid = 0.5 * (grid.left + grid.right);
      const double half = 0.5 * (grid.right - grid.left) * 1.4;
      grid.left = mid - half;
      grid.right = mid + half;
    }
  }
}

}  // namespace loggas
