#include "loggas/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace loggas {

double draw_uniform(std::mt19937_64& gen) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
}

double draw_normal(std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(gen);
}

double draw_chi(std::mt19937_64& gen, double dof) {
  std::chi_squared_distribution<double> dist(dof);
  return std::sqrt(dist(gen));
}

double SamplingTarget::energy(const std::vector<double>& x) const {
  const auto nn = static_cast<std::size_t>(n);
  double one_body = 0.0;
  for (double v : x) one_body += field(v);
  double acc = static_cast<double>(n) * one_body;
  const bool has_pair = !pair.is_zero();
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) {
      const double d = x[i] - x[j];
      if (d == 0.0) return std::numeric_limits<double>::infinity();
      acc -= beta * std::log(std::abs(d));
      if (has_pair) acc += pair(d);
    }
  return acc;
}

double SamplingTarget::energy_delta(const std::vector<double>& x, int site, double proposed) const {
  const auto nn = static_cast<std::size_t>(n);
  const double old_pos = x[site];
  double delta = static_cast<double>(n) * (field(proposed) - field(old_pos));
  const bool has_pair = !pair.is_zero();
  for (std::size_t j = 0; j < nn; ++j) {
    if (static_cast<int>(j) == site) continue;
    const double d_new = proposed - x[j];
    if (d_new == 0.0) return std::numeric_limits<double>::infinity();
    const double d_old = old_pos - x[j];
    delta -= beta * (std::log(std::abs(d_new)) - std::log(std::abs(d_old)));
    if (has_pair) delta += pair(d_new) - pair(d_old);
  }
  return delta;
}

bool SamplingTarget::gradient(const std::vector<double>& x, std::vector<double>& out) const {
  const auto nn = static_cast<std::size_t>(n);
  out.assign(nn, 0.0);
  for (std::size_t l = 0; l < nn; ++l) out[l] = static_cast<double>(n) * field.deriv(x[l]);
  const bool has_pair = !pair.is_zero();
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = i + 1; j < nn; ++j) {
      const double d = x[i] - x[j];
      if (d == 0.0) return false;
      const double rep = beta / d;
      out[i] -= rep;
      out[j] += rep;
      if (has_pair) {
        const double hp = pair.deriv(d);
        out[i] += hp;
        out[j] -= hp;
      }
    }
  return true;
}

double SamplingTarget::spread_estimate() const {
  const double alpha = std::max(field.base().alpha_q(), 0.2);
  return std::sqrt(beta / (0.5 * alpha));
}

SamplingTarget target_from(const EnsembleSpec& spec) {
  return SamplingTarget{spec.n, spec.beta, EffectiveField(spec.field), spec.interaction, "modified"};
}

SamplingTarget comparison_target(const EnsembleSpec& spec, const GridMeasure& mu) {
  return SamplingTarget{spec.n, spec.beta, EffectiveField(spec.field, spec.interaction, mu),
                        InteractionPotential(), "comparison"};
}

std::string to_string(ChainAlgorithm alg) {
  return alg == ChainAlgorithm::metropolis ? "metropolis" : "mala";
}

ChainAlgorithm chain_algorithm_from_string(const std::string& name) {
  if (name == "metropolis") return ChainAlgorithm::metropolis;
  if (name == "mala") return ChainAlgorithm::mala;
  throw std::invalid_argument("unknown chain algorithm: " + name);
}

ChainSchedule ChainSchedule::defaults(int n, std::uint64_t n_samples) {
  ChainSchedule s;
  s.burn_in = 10000ULL * static_cast<std::uint64_t>(n);
  s.thin = static_cast<std::uint64_t>(n);
  s.n_steps = s.thin * n_samples;
  return s;
}

double metropolis_accept_probability(double delta_energy) {
  if (delta_energy <= 0.0) return 1.0;
  return std::exp(-delta_energy);
}

ChainRunner::ChainRunner(ChainAlgorithm algorithm, SamplingTarget target, std::uint64_t seed,
                         ChainSchedule schedule)
    : algorithm_(algorithm), target_(std::move(target)), seed_(seed), schedule_(schedule), gen_(seed),
      step_(schedule.initial_step) {
  if (schedule_.thin == 0) throw std::invalid_argument("ChainRunner: thin must be positive");
  if (!(schedule_.initial_step > 0.0)) throw std::invalid_argument("ChainRunner: step must be positive");
  // Deterministic coincidence-free start: equally spaced over the bulk.
  const int n = target_.n;
  x_.resize(n);
  const double r = 0.9 * target_.spread_estimate();
  for (int j = 0; j < n; ++j)
    x_[j] = n == 1 ? 0.0 : -r + 2.0 * r * static_cast<double>(j) / (n - 1);
  energy_ = target_.energy(x_);
  if (algorithm_ == ChainAlgorithm::mala) {
    grad_.resize(n);
    grad_valid_ = target_.gradient(x_, grad_);
  }
}

double ChainRunner::acceptance_rate() const {
  const std::uint64_t main_moves = moves_done_ > schedule_.burn_in ? moves_done_ - schedule_.burn_in : 0;
  if (main_moves == 0) return 0.0;
  return static_cast<double>(accepted_main_) / static_cast<double>(main_moves);
}

void ChainRunner::adapt_batch() {
  ++batch_index_;
  const double rate = batch_moves_ ? static_cast<double>(batch_accepted_) / static_cast<double>(batch_moves_) : 0.0;
  const double gamma = std::max(0.02, 0.5 / std::sqrt(static_cast<double>(batch_index_)));
  step_ *= std::exp(gamma * (rate - schedule_.target_acceptance));
  step_ = std::clamp(step_, 1e-12, 1e3);
  batch_accepted_ = 0;
  batch_moves_ = 0;
}

void ChainRunner::one_move() {
  const bool in_burn = moves_done_ < schedule_.burn_in;
  bool accepted = false;

  if (algorithm_ == ChainAlgorithm::metropolis) {
    const int site = std::uniform_int_distribution<int>(0, target_.n - 1)(gen_);
    const double proposed = x_[site] + step_ * draw_normal(gen_);
    const double delta = target_.energy_delta(x_, site, proposed);
    const double u = draw_uniform(gen_);
    if (u < metropolis_accept_probability(delta)) {
      x_[site] = proposed;
      energy_ += delta;
      accepted = true;
    }
  } else {
    const auto n = static_cast<std::size_t>(target_.n);
    if (!grad_valid_) grad_valid_ = target_.gradient(x_, grad_);
    std::vector<double> y(n), noise(n);
    for (std::size_t j = 0; j < n; ++j) noise[j] = draw_normal(gen_);
    const double s = step_;
    for (std::size_t j = 0; j < n; ++j) y[j] = x_[j] - 0.5 * s * grad_[j] + std::sqrt(s) * noise[j];
    const double energy_y = target_.energy(y);
    const double u = draw_uniform(gen_);
    if (std::isfinite(energy_y)) {
      std::vector<double> grad_y(n);
      if (target_.gradient(y, grad_y)) {
        double forward = 0.0, backward = 0.0;  // -log q up to the common 1/(2s)
        for (std::size_t j = 0; j < n; ++j) {
          const double df = y[j] - x_[j] + 0.5 * s * grad_[j];
          const double db = x_[j] - y[j] + 0.5 * s * grad_y[j];
          forward += df * df;
          backward += db * db;
        }
        const double log_alpha = energy_ - energy_y + (forward - backward) / (2.0 * s);
        if (std::log(u) < log_alpha) {
          x_.swap(y);
          grad_.swap(grad_y);
          energy_ = energy_y;
          accepted = true;
        }
      }
    }
  }

  ++moves_done_;
  if (in_burn) {
    if (accepted) {
      ++accepted_burn_;
      ++batch_accepted_;
    }
    ++batch_moves_;
    if (batch_moves_ >= 200) adapt_batch();
    if (moves_done_ == schedule_.burn_in && schedule_.burn_in >= 500 && accepted_burn_ == 0)
      throw ChainError("chain burn-in rejected every proposal (step size collapse)");
  } else if (accepted) {
    ++accepted_main_;
  }
}

std::size_t ChainRunner::advance(std::size_t max_new_samples) {
  std::size_t retained = 0;
  const std::uint64_t total = schedule_.burn_in + schedule_.n_steps;
  while (moves_done_ < total && retained < max_new_samples) {
    one_move();
    if (moves_done_ > schedule_.burn_in) {
      const std::uint64_t since_burn = moves_done_ - schedule_.burn_in;
      if (since_burn % schedule_.thin == 0) {
        std::vector<double> row = x_;
        std::sort(row.begin(), row.end());
        samples_.push_back(std::move(row));
        ++retained;
      }
    }
  }
  return retained;
}

void ChainRunner::save_state(std::ostream& os) const {
  os << "loggas-chain-state v1\n";
  os << "algorithm " << to_string(algorithm_) << "\n";
  os << "seed " << seed_ << "\n";
  os << "n " << target_.n << "\n";
  os << std::setprecision(17);
  os << "step " << step_ << "\n";
  os << "moves_done " << moves_done_ << "\n";
  os << "accepted_burn " << accepted_burn_ << "\n";
  os << "accepted_main " << accepted_main_ << "\n";
  os << "batch_accepted " << batch_accepted_ << "\n";
  os << "batch_moves " << batch_moves_ << "\n";
  os << "batch_index " << batch_index_ << "\n";
  os << "x";
  for (double v : x_) os << " " << v;
  os << "\n";
  os << "rng " << gen_ << "\n";
}

void ChainRunner::restore_state(std::istream& is) {
  std::string line, key;
  std::getline(is, line);
  if (line != "loggas-chain-state v1") throw ChainError("unrecognized chain state header");
  auto expect = [&](const std::string& want) -> std::istringstream {
    std::getline(is, line);
    std::istringstream ls(line);
    ls >> key;
    if (key != want) throw ChainError("chain state: expected '" + want + "', got '" + key + "'");
    return ls;
  };
  std::string alg;
  expect("algorithm") >> alg;
  if (chain_algorithm_from_string(alg) != algorithm_) throw ChainError("chain state: algorithm mismatch");
  std::uint64_t seed;
  expect("seed") >> seed;
  if (seed != seed_) throw ChainError("chain state: seed mismatch");
  int n;
  expect("n") >> n;
  if (n != target_.n) throw ChainError("chain state: dimension mismatch");
  expect("step") >> step_;
  expect("moves_done") >> moves_done_;
  expect("accepted_burn") >> accepted_burn_;
  expect("accepted_main") >> accepted_main_;
  expect("batch_accepted") >> batch_accepted_;
  expect("batch_moves") >> batch_moves_;
  expect("batch_index") >> batch_index_;
  {
    auto ls = expect("x");
    x_.assign(static_cast<std::size_t>(n), 0.0);
    for (auto& v : x_) ls >> v;
  }
  std::getline(is, line);
  if (line.rfind("rng ", 0) != 0) throw ChainError("chain state: missing rng state");
  std::istringstream rs(line.substr(4));
  rs >> gen_;
  energy_ = target_.energy(x_);
  if (algorithm_ == ChainAlgorithm::mala) {
    grad_.resize(static_cast<std::size_t>(n));
    grad_valid_ = target_.gradient(x_, grad_);
  }
  samples_.clear();
}

namespace {

ChainRun run_single(ChainAlgorithm algorithm, const SamplingTarget& target, std::uint64_t seed,
                    const ChainSchedule& schedule) {
  ChainRunner runner(algorithm, target, seed, schedule);
  runner.advance();
  ChainRun run;
  run.algorithm = algorithm;
  run.seed = seed;
  run.schedule = schedule;
  run.step_size = runner.step_size();
  run.acceptance_rate = runner.acceptance_rate();
  run.samples = runner.take_samples();
  return run;
}

}  // namespace

ChainRun metropolis_chain(const SamplingTarget& target, std::uint64_t seed, const ChainSchedule& schedule) {
  return run_single(ChainAlgorithm::metropolis, target, seed, schedule);
}

ChainRun mala_chain(const SamplingTarget& target, std::uint64_t seed, const ChainSchedule& schedule) {
  return run_single(ChainAlgorithm::mala, target, seed, schedule);
}

std::vector<std::vector<double>> run_chains(ChainAlgorithm algorithm, const SamplingTarget& target,
                                            std::uint64_t seed, const ChainSchedule& schedule,
                                            int n_chains, int threads) {
  if (n_chains < 1) throw std::invalid_argument("run_chains: need at least one chain");
  threads = std::max(1, threads);
  std::vector<std::future<ChainRun>> futures;
  std::vector<ChainRun> runs(static_cast<std::size_t>(n_chains));
  // bounded fan-out, results merged in seed order
  int next = 0, done = 0;
  std::vector<std::pair<int, std::future<ChainRun>>> in_flight;
  while (done < n_chains) {
    while (next < n_chains && static_cast<int>(in_flight.size()) < threads) {
      const std::uint64_t chain_seed = seed + static_cast<std::uint64_t>(next);
      in_flight.emplace_back(next, std::async(std::launch::async, run_single, algorithm, target,
                                              chain_seed, schedule));
      ++next;
    }
    auto& [idx, fut] = in_flight.front();
    runs[static_cast<std::size_t>(idx)] = fut.get();
    in_flight.erase(in_flight.begin());
    ++done;
  }
  std::vector<std::vector<double>> merged;
  for (auto& run : runs)
    for (auto& row : run.samples) merged.push_back(std::move(row));
  return merged;
}

}  // namespace loggas
