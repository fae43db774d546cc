#ifndef LOGGAS_MCMC_HPP
#define LOGGAS_MCMC_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "loggas/effective_field.hpp"
#include "loggas/ensemble.hpp"
#include "loggas/grid_measure.hpp"

namespace loggas {

// Draws through freshly constructed distributions, so each value is a pure
// function of the generator state. That keeps checkpoint/resume byte-exact.
double draw_uniform(std::mt19937_64& gen);
double draw_normal(std::mt19937_64& gen);
double draw_chi(std::mt19937_64& gen, double dof);

// What the chains target:
//   E(x) = N sum_j V(x_j) - beta sum_{i<j} log|x_i - x_j| + sum_{i<j} pair(x_i - x_j)
// with V either a bare external field (P^h_{N,Q,beta} when `pair` is h) or the
// effective field Q + h_mu with no pair term (the comparison ensemble P_{N,V,beta}).
struct SamplingTarget {
  int n = 1;
  double beta = 2.0;
  EffectiveField field;
  InteractionPotential pair;
  std::string label;

  double energy(const std::vector<double>& x) const;  // +inf on exact coincidence
  double energy_delta(const std::vector<double>& x, int site, double proposed) const;
  // False when the gradient is undefined (coincident pair).
  bool gradient(const std::vector<double>& x, std::vector<double>& out) const;
  // Rough support radius, used for the deterministic initial configuration.
  double spread_estimate() const;
};

SamplingTarget target_from(const EnsembleSpec& spec);
SamplingTarget comparison_target(const EnsembleSpec& spec, const GridMeasure& mu);

enum class ChainAlgorithm { metropolis, mala };
std::string to_string(ChainAlgorithm alg);
ChainAlgorithm chain_algorithm_from_string(const std::string& name);

struct ChainSchedule {
  std::uint64_t n_steps = 0;   // proposals after burn-in
  std::uint64_t burn_in = 0;   // proposals with step adaptation
  std::uint64_t thin = 1;      // proposals between retained samples
  double initial_step = 0.5;
  double target_acceptance = 0.3;

  // burn_in = 10 * N * 1000 single-site moves, thin = N.
  static ChainSchedule defaults(int n, std::uint64_t n_samples);
};

class ChainError : public std::runtime_error {
public:
  explicit ChainError(const std::string& what) : std::runtime_error(what) {}
};

// Metropolis acceptance probability min(1, exp(-delta_energy)).
double metropolis_accept_probability(double delta_energy);

// Stepping engine shared by both algorithms; supports checkpoint/resume with
// byte-identical continuation.
class ChainRunner {
public:
  ChainRunner(ChainAlgorithm algorithm, SamplingTarget target, std::uint64_t seed, ChainSchedule schedule);

  // Advance until `max_new_samples` more samples are retained or the schedule
  // is exhausted; returns how many samples were retained.
  std::size_t advance(std::size_t max_new_samples = SIZE_MAX);
  bool finished() const { return moves_done_ >= schedule_.burn_in + schedule_.n_steps; }

  const std::vector<std::vector<double>>& samples() const { return samples_; }
  std::vector<std::vector<double>> take_samples() { return std::move(samples_); }

  double step_size() const { return step_; }
  double acceptance_rate() const;
  std::uint64_t moves_done() const { return moves_done_; }
  const std::vector<double>& positions() const { return x_; }

  void save_state(std::ostream& os) const;  // everything except retained samples
  void restore_state(std::istream& is);

private:
  void one_move();
  void adapt_batch();

  ChainAlgorithm algorithm_;
  SamplingTarget target_;
  std::uint64_t seed_;
  ChainSchedule schedule_;
  std::mt19937_64 gen_;

  std::vector<double> x_;
  double energy_ = 0.0;
  std::vector<double> grad_;  // MALA only
  bool grad_valid_ = false;

  double step_;
  std::uint64_t moves_done_ = 0;
  std::uint64_t accepted_burn_ = 0;
  std::uint64_t accepted_main_ = 0;
  std::uint64_t batch_accepted_ = 0;
  std::uint64_t batch_moves_ = 0;
  std::uint64_t batch_index_ = 0;

  std::vector<std::vector<double>> samples_;
};

struct ChainRun {
  ChainAlgorithm algorithm;
  std::uint64_t seed = 0;
  ChainSchedule schedule;
  double step_size = 0.0;
  double acceptance_rate = 0.0;
  std::vector<std::vector<double>> samples;  // rows sorted ascending
};

ChainRun metropolis_chain(const SamplingTarget& target, std::uint64_t seed, const ChainSchedule& schedule);
ChainRun mala_chain(const SamplingTarget& target, std::uint64_t seed, const ChainSchedule& schedule);

// Fans chains with seeds seed, seed+1, ... across `threads` workers and
// concatenates their samples in seed order.
std::vector<std::vector<double>> run_chains(ChainAlgorithm algorithm, const SamplingTarget& target,
                                            std::uint64_t seed, const ChainSchedule& schedule,
                                            int n_chains, int threads);

}  // namespace loggas

#endif
