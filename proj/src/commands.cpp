#include "loggas/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>
#include <iostream>
#include <sstream>

#include "loggas/hoeffding.hpp"
#include "loggas/manifest.hpp"
#include "loggas/mcmc.hpp"
#include "loggas/sample_io.hpp"
#include "loggas/sampling_oracle.hpp"
#include "loggas/stats.hpp"
#include "loggas/svg_plot.hpp"
#include "loggas/tridiagonal.hpp"

namespace fs = std::filesystem;

namespace loggas {

namespace {

void ensure_out_dir(const ExperimentConfig& config) { fs::create_directories(config.out_dir); }

std::string out_path(const ExperimentConfig& config, const std::string& name) {
  return (fs::path(config.out_dir) / name).string();
}

void warn_if_uncertified(const EnsembleSpec& spec) {
  if (!spec.certified())
    std::cerr << "warning: alpha_Q = " << spec.field.alpha_q() << ", sup(-h'') = "
              << spec.interaction.alpha_h()
              << "; run is outside the certified regime (admissibility is advisory)\n";
}

SampleMeta meta_from(const ExperimentConfig& config, const EnsembleSpec& spec,
                     const ChainSchedule& schedule) {
  SampleMeta meta;
  meta.n = spec.n;
  meta.beta = spec.beta;
  meta.field = spec.field.descriptor();
  meta.interaction = spec.interaction.descriptor();
  meta.sampler = config.algorithm;
  meta.target = config.target;
  meta.seed = config.seed;
  meta.n_steps = schedule.n_steps;
  meta.burn_in = schedule.burn_in;
  meta.thin = schedule.thin;
  return meta;
}

ChainSchedule schedule_from(const ExperimentConfig& config) {
  ChainSchedule s = ChainSchedule::defaults(config.n, config.n_samples);
  if (config.burn_in > 0) s.burn_in = config.burn_in;
  if (config.thin > 0) s.thin = config.thin;
  s.n_steps = s.thin * config.n_samples;
  s.initial_step = config.initial_step;
  if (config.algorithm == "mala") s.target_acceptance = 0.5;
  return s;
}

}  // namespace

void write_equilibrium_csv(const std::string& path, const EquilibriumSolution& solution) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  const auto& mu = solution.mu;
  os << "cell_midpoint,weight,density,effective_potential\n";
  for (std::size_t c = 0; c < mu.n_cells(); ++c)
    os << format_double(mu.midpoint(c)) << "," << format_double(mu.weights()[c]) << ","
       << format_double(mu.density(c)) << "," << format_double(solution.effective_potential[c]) << "\n";
}

std::pair<GridMeasure, std::vector<double>> read_equilibrium_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw MissingArtifactError("equilibrium artifact not found: " + path + " (run eqsolve first)");
  std::string line;
  std::getline(is, line);  // header
  std::vector<double> mids, weights, potential;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() < 4) throw std::runtime_error("bad equilibrium row in " + path);
    mids.push_back(row[0]);
    weights.push_back(row[1]);
    potential.push_back(row[3]);
  }
  if (mids.size() < 2) throw std::runtime_error("equilibrium file too short: " + path);
  const double dx = mids[1] - mids[0];
  GridMeasure mu = GridMeasure::normalized(mids.front() - dx / 2.0, mids.back() + dx / 2.0,
                                           std::move(weights));
  return {std::move(mu), std::move(potential)};
}

SelfConsistentResult solve_for_config(const ExperimentConfig& config) {
  SelfConsistentOptions options;
  options.tol = config.sc_tol;
  options.damping = config.damping;
  options.inner.tol = config.solver_tol;
  return self_consistent_solve_auto(config.make_field(), config.make_interaction(), config.beta,
                                    config.make_grid(), options);
}

EquilibriumSolution gaussian_equilibrium(double beta, std::size_t n_cells) {
  GridSpec grid = GridSpec::default_for(beta, n_cells);
  std::vector<double> V(grid.n_cells);
  for (std::size_t c = 0; c < grid.n_cells; ++c) {
    const double t = grid.midpoint(c);
    V[c] = t * t;
  }
  return solve_equilibrium(EquilibriumProblem(std::move(V), beta, grid), 1e-9);
}

int cmd_eqsolve(const ExperimentConfig& config) {
  ensure_out_dir(config);
  const EnsembleSpec spec = config.make_spec();
  warn_if_uncertified(spec);

  auto result = solve_for_config(config);
  const auto& sol = result.equilibrium;
  auto [lo, hi] = result.mu_star.support_interval();

  const std::string csv = out_path(config, "equilibrium.csv");
  EquilibriumSolution star{result.mu_star, sol.effective_potential, sol.lagrange_constant,
                           sol.el_residual, sol.iterations, sol.objective};
  write_equilibrium_csv(csv, star);

  Manifest manifest("eqsolve", serialize_config(config));
  manifest.set_result("el_residual", sol.el_residual);
  manifest.set_result("lagrange_constant", sol.lagrange_constant);
  manifest.set_result("objective", sol.objective);
  manifest.set_result("iterations", static_cast<std::int64_t>(sol.iterations));
  manifest.set_result("outer_iterations", static_cast<std::int64_t>(result.outer_iterations));
  manifest.set_result("self_consistency_l1", result.self_residual);
  manifest.set_result("support_lo", lo);
  manifest.set_result("support_hi", hi);
  manifest.add_output(csv);
  manifest.write(out_path(config, "equilibrium_manifest.json"));

  std::cout << "eqsolve: support [" << lo << ", " << hi << "], EL residual " << sol.el_residual
            << ", self-consistency L1 " << result.self_residual << " (" << result.outer_iterations
            << " outer iterations)\n";
  return exit_code::ok;
}

int cmd_sample(const ExperimentConfig& config, const SampleOptions& options) {
  ensure_out_dir(config);
  const EnsembleSpec spec = config.make_spec();
  warn_if_uncertified(spec);
  const std::string csv = out_path(config, "samples.csv");
  const std::string state_path = out_path(config, "chain_state.txt");

  ChainSchedule schedule = schedule_from(config);
  SampleMeta meta = meta_from(config, spec, schedule);

  Manifest manifest("sample", serialize_config(config));

  if (config.algorithm == "tridiagonal") {
    if (!spec.field.is_unit_gaussian())
      throw ConfigError(0, "sampler.algorithm", "tridiagonal requires the Gaussian field t^2");
    meta.n_steps = config.n_samples;
    meta.burn_in = 0;
    meta.thin = 1;
    auto draws = tridiagonal_draws(spec.n, spec.beta, config.seed, config.n_samples);
    double second_moment = 0.0;
    for (const auto& row : draws) {
      double acc = 0.0;
      for (double v : row) acc += v * v;
      second_moment += acc / static_cast<double>(spec.n);
    }
    second_moment /= static_cast<double>(draws.size());
    write_samples_csv(csv, meta, draws);
    manifest.set_result("n_samples", static_cast<std::int64_t>(draws.size()));
    manifest.set_result("second_moment", second_moment);
    manifest.add_output(csv);
    manifest.write(out_path(config, "samples_manifest.json"));
    std::cout << "sample: " << draws.size() << " tridiagonal draws, (1/N) sum x^2 averages "
              << second_moment << "\n";
    return exit_code::ok;
  }

  // MCMC paths
  SamplingTarget target = [&] {
    if (config.target == "comparison") {
      auto [mu, potential] = read_equilibrium_csv(out_path(config, "equilibrium.csv"));
      return comparison_target(spec, mu);
    }
    if (config.target == "gaussian") {
      EnsembleSpec bare = EnsembleSpec::make(spec.n, spec.beta, spec.field);
      return target_from(bare);
    }
    return target_from(spec);  // modified
  }();

  const ChainAlgorithm algorithm = chain_algorithm_from_string(config.algorithm);

  if (config.chains > 1) {
    // independent chains, merged in seed order; no checkpointing in this mode
    auto samples = run_chains(algorithm, target, config.seed, schedule, config.chains, options.threads);
    write_samples_csv(csv, meta, samples);
    manifest.set_result("n_samples", static_cast<std::int64_t>(samples.size()));
    manifest.set_result("chains", static_cast<std::int64_t>(config.chains));
    manifest.add_output(csv);
    manifest.write(out_path(config, "samples_manifest.json"));
    std::cout << "sample: " << samples.size() << " samples from " << config.chains << " chains\n";
    return exit_code::ok;
  }

  ChainRunner runner(algorithm, target, config.seed, schedule);
  std::uint64_t written = 0;
  const bool resuming = fs::exists(state_path) && fs::exists(csv);
  if (resuming) {
    std::ifstream is(state_path);
    runner.restore_state(is);
    std::string count_line;
    std::getline(is, count_line);
    if (count_line.rfind("samples_written ", 0) != 0)
      throw ChainError("chain state: missing samples_written");
    written = std::stoull(count_line.substr(16));
    std::cout << "sample: resuming after " << runner.moves_done() << " moves, " << written
              << " samples\n";
  } else {
    write_samples_csv(csv, meta, {});
  }

  const std::uint64_t chunk = config.checkpoint_every > 0 ? config.checkpoint_every : config.n_samples;
  while (!runner.finished()) {
    const std::size_t got = runner.advance(chunk);
    append_samples_csv(csv, runner.samples());
    written += got;
    runner.take_samples();
    {
      std::ofstream os(state_path);
      runner.save_state(os);
      os << "samples_written " << written << "\n";
    }
    if (options.interrupt_after > 0 && written >= options.interrupt_after && !runner.finished()) {
      std::cout << "sample: interrupted after " << written << " samples (resume by re-running)\n";
      return exit_code::ok;
    }
  }

  manifest.set_result("n_samples", static_cast<std::int64_t>(written));
  manifest.set_result("step_size", runner.step_size());
  manifest.set_result("acceptance_rate", runner.acceptance_rate());
  manifest.add_output(csv);
  manifest.write(out_path(config, "samples_manifest.json"));
  std::cout << "sample: " << written << " samples, acceptance " << runner.acceptance_rate()
            << ", step " << runner.step_size() << "\n";
  return exit_code::ok;
}

namespace {

// FNV-1a of the model-identifying part of the config, so summary rows from
// different runs of the same spec can be grouped.
std::string spec_hash(const EnsembleSpec& spec) {
  const std::string text = spec.field.descriptor() + "|" + spec.interaction.descriptor() + "|" +
                           format_double(spec.beta);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return hash_string(h);
}

}  // namespace

int cmd_stats(const ExperimentConfig& config, int) {
  ensure_out_dir(config);
  const EnsembleSpec spec = config.make_spec();
  const std::string sample_path = out_path(config, "samples.csv");
  if (!fs::exists(sample_path))
    throw MissingArtifactError("samples not found: " + sample_path + " (run sample first)");
  auto [meta, samples] = read_samples_csv(sample_path);
  if (samples.empty()) throw MissingArtifactError("sample file is empty: " + sample_path);
  if (meta.n != spec.n || meta.beta != spec.beta) {
    std::ostringstream msg;
    msg << "sample file disagrees with the config: N " << meta.n << " vs " << spec.n << ", beta "
        << meta.beta << " vs " << spec.beta;
    throw IncompatibleInputsError(msg.str());
  }

  auto [mu, potential] = read_equilibrium_csv(out_path(config, "equilibrium.csv"));
  GridSpec grid{mu.left(), mu.right(), mu.n_cells()};

  Manifest manifest("stats", serialize_config(config));
  std::vector<std::tuple<std::string, double, double>> summary;  // statistic, value, error

  // one-point density vs solved measure
  auto kde = empirical_density(samples, grid, config.kde_bandwidth);
  const double l1 = kde.l1_distance(mu);
  manifest.set_result("density_l1", l1);
  summary.emplace_back("density_l1", l1, 0.0);
  {
    std::vector<double> xs(grid.n_cells), solved(grid.n_cells), empirical(grid.n_cells);
    for (std::size_t c = 0; c < grid.n_cells; ++c) {
      xs[c] = mu.midpoint(c);
      solved[c] = mu.density(c);
      empirical[c] = kde.density(c);
    }
    SvgPlot plot("one-point density (L1 distance " + std::to_string(l1) + ")", "t", "density");
    plot.add_line(xs, solved, "equilibrium");
    plot.add_line(xs, empirical, "empirical");
    plot.write(out_path(config, "density_overlay.svg"));

    std::ofstream os(out_path(config, "density.csv"));
    os << "t,equilibrium,empirical\n";
    for (std::size_t c = 0; c < grid.n_cells; ++c)
      os << format_double(xs[c]) << "," << format_double(solved[c]) << ","
         << format_double(empirical[c]) << "\n";
  }

  // spacings
  std::vector<SpacingSample> spacings;
  spacings.reserve(samples.size());
  for (const auto& row : samples) spacings.push_back(unfold(Configuration(row), mu));
  const double stationarity = split_half_ks(samples);
  manifest.set_result("split_half_ks", stationarity);
  if (stationarity > 0.03)
    std::cerr << "warning: split-half KS " << stationarity << " exceeds 0.03; chain may not be converged\n";
  try {
    auto hist = spacing_histogram(spacings, config.spacing_bins);
    manifest.set_result("mean_gap", hist.mean_gap);
    manifest.set_result("n_gaps", static_cast<std::int64_t>(hist.sorted_gaps.size()));
    summary.emplace_back("mean_gap", hist.mean_gap, 0.0);
    SvgPlot plot("unfolded bulk spacings (mean " + std::to_string(hist.mean_gap) + ")", "s", "mass");
    plot.add_bars(hist.edges, hist.mass, "empirical");
    plot.write(out_path(config, "spacing_hist.svg"));
    std::ofstream os(out_path(config, "spacing.csv"));
    os << "edge_lo,edge_hi,mass\n";
    for (std::size_t b = 0; b < hist.mass.size(); ++b)
      os << format_double(hist.edges[b]) << "," << format_double(hist.edges[b + 1]) << ","
         << format_double(hist.mass[b]) << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "stats: skipping spacing histogram (" << e.what() << ")\n";
  }

  // locally averaged correlations
  {
    std::ofstream os(out_path(config, "correlations.csv"));
    os << "k,a,xi,s_n,value,std_error,n_samples,test_function\n";
    for (int k : config.corr_k) {
      auto f = CorrelationTestFunction::standard(k, config.f1_radius, config.f2_radius);
      auto est = averaged_correlation(samples, mu, spec.n, k, config.bulk_point, config.xi, f,
                                      config.seed + 1000 + static_cast<std::uint64_t>(k), config.n_u);
      os << k << "," << format_double(est.center) << "," << format_double(est.xi) << ","
         << format_double(est.window) << "," << format_double(est.value) << ","
         << format_double(est.std_error) << "," << est.n_samples << "," << est.test_function << "\n";
      manifest.set_result("corr_k" + std::to_string(k), est.value);
      manifest.set_result("corr_k" + std::to_string(k) + "_se", est.std_error);
      summary.emplace_back("corr_k" + std::to_string(k), est.value, est.std_error);
    }
  }

  // importance diagnostics for the comparison ensemble
  if (!spec.interaction.is_zero() && meta.target == "comparison") {
    auto dirichlet = estimate_dirichlet(samples, spec.interaction, mu);
    auto expmom = exp_moment_diagnostic(samples, spec.interaction, mu, config.exp_lambda);
    if (dirichlet.weight_warning)
      std::cerr << "warning: importance weight ESS " << dirichlet.ess << " below 50\n";
    manifest.set_result("dirichlet", dirichlet.value);
    manifest.set_result("weight_ess", dirichlet.ess);
    manifest.set_result("exp_moment", expmom.estimate);
    manifest.set_result("exp_moment_lower", expmom.lower);
    manifest.set_result("exp_moment_upper", expmom.upper);
    summary.emplace_back("dirichlet", dirichlet.value, 0.0);
    summary.emplace_back("exp_moment", expmom.estimate, 0.5 * (expmom.upper - expmom.lower));
    std::ofstream os(out_path(config, "importance.csv"));
    os << "statistic,value,lower,upper,ess\n";
    os << "dirichlet," << format_double(dirichlet.value) << ",,," << format_double(dirichlet.ess) << "\n";
    os << "exp_moment_lambda" << format_double(config.exp_lambda) << ","
       << format_double(expmom.estimate) << "," << format_double(expmom.lower) << ","
       << format_double(expmom.upper) << "," << format_double(expmom.ess) << "\n";
  }

  {
    const std::string hash = spec_hash(spec);
    std::ofstream os(out_path(config, "stats_summary.csv"));
    os << "statistic,n,spec_hash,value,error\n";
    for (const auto& [name, value, error] : summary)
      os << name << "," << spec.n << "," << hash << "," << format_double(value) << ","
         << format_double(error) << "\n";
  }
  for (const auto& name : {"density.csv", "correlations.csv", "stats_summary.csv"})
    manifest.add_output(out_path(config, name));
  if (fs::exists(out_path(config, "spacing.csv"))) manifest.add_output(out_path(config, "spacing.csv"));
  manifest.write(out_path(config, "stats_manifest.json"));
  std::cout << "stats: density L1 " << l1 << ", outputs in " << config.out_dir << "\n";
  return exit_code::ok;
}


int cmd_stats_trend(const ExperimentConfig& config, const std::vector<std::string>& run_dirs) {
  ensure_out_dir(config);
  // statistic -> sorted (n, value, error)
  std::map<std::string, std::vector<std::array<double, 3>>> series;
  for (const auto& dir : run_dirs) {
    const std::string path = (fs::path(dir) / "stats_summary.csv").string();
    std::ifstream is(path);
    if (!is) throw MissingArtifactError("stats summary not found: " + path + " (run stats first)");
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string name, n_str, hash, value_str, error_str;
      std::getline(ls, name, ',');
      std::getline(ls, n_str, ',');
      std::getline(ls, hash, ',');
      std::getline(ls, value_str, ',');
      std::getline(ls, error_str, ',');
      series[name].push_back({std::stod(n_str), std::stod(value_str), std::stod(error_str)});
    }
  }
  if (series.empty()) throw MissingArtifactError("no summary rows found in the given run directories");
  for (auto& [name, rows] : series)
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });

  {
    std::ofstream os(out_path(config, "trend.csv"));
    os << "statistic,n,value,error\n";
    for (const auto& [name, rows] : series)
      for (const auto& row : rows)
        os << name << "," << static_cast<int>(row[0]) << "," << format_double(row[1]) << ","
           << format_double(row[2]) << "\n";
  }
  SvgPlot plot("statistics vs ensemble size", "N", "value");
  for (const auto& [name, rows] : series) {
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
      xs.push_back(row[0]);
      ys.push_back(row[1]);
    }
    if (xs.size() >= 2) plot.add_line(xs, ys, name);
  }
  plot.write(out_path(config, "ntrend.svg"));

  Manifest manifest("stats-trend", serialize_config(config));
  manifest.set_result("runs", static_cast<std::int64_t>(run_dirs.size()));
  manifest.add_output(out_path(config, "trend.csv"));
  manifest.write(out_path(config, "trend_manifest.json"));
  std::cout << "stats: trend over " << run_dirs.size() << " runs written to " << config.out_dir
            << "\n";
  return exit_code::ok;
}

int cmd_compare(const ExperimentConfig& config, const std::string& file_a, const std::string& file_b,
                bool force) {
  ensure_out_dir(config);
  const EnsembleSpec spec = config.make_spec();
  warn_if_uncertified(spec);

  for (const auto& file : {file_a, file_b})
    if (!fs::exists(file)) throw MissingArtifactError("sample file not found: " + file);
  auto [meta_a, samples_a] = read_samples_csv(file_a);
  auto [meta_b, samples_b] = read_samples_csv(file_b);
  if (meta_a.n != meta_b.n || meta_a.beta != meta_b.beta) {
    std::ostringstream msg;
    msg << "ensembles disagree: N " << meta_a.n << " vs " << meta_b.n << ", beta " << meta_a.beta
        << " vs " << meta_b.beta;
    if (!force) throw IncompatibleInputsError(msg.str());
    std::cerr << "warning: " << msg.str() << " (forced; using configured reference measures)\n";
  }

  // Side A: the modified ensemble with its self-consistent measure.
  // Side B: the reference ensemble with the configured Gaussian measure.
  auto fixed = solve_for_config(config);
  const GridMeasure& mu_a = fixed.mu_star;
  auto gauss = gaussian_equilibrium(config.beta, config.grid_cells);
  const GridMeasure& mu_b = gauss.mu;

  struct Row {
    std::string name;
    double a_value, a_err, b_value, b_err, diff, tol;
    bool pass;
  };
  std::vector<Row> rows;

  for (int k : config.corr_k) {
    auto f = CorrelationTestFunction::standard(k, config.f1_radius, config.f2_radius);
    auto est_a = averaged_correlation(samples_a, mu_a, meta_a.n, k, config.bulk_point, config.xi, f,
                                      config.seed + 2000 + static_cast<std::uint64_t>(k), config.n_u);
    auto est_b = averaged_correlation(samples_b, mu_b, meta_b.n, k, config.bulk_point, config.xi, f,
                                      config.seed + 3000 + static_cast<std::uint64_t>(k), config.n_u);
    const double diff = est_a.value - est_b.value;
    const double combined = std::sqrt(est_a.std_error * est_a.std_error +
                                      est_b.std_error * est_b.std_error);
    rows.push_back({"averaged correlation k=" + std::to_string(k), est_a.value, est_a.std_error,
                    est_b.value, est_b.std_error, diff, 3.0 * combined,
                    std::abs(diff) <= 3.0 * combined});
  }

  // spacing comparison; both sides unfolded with the configured measures
  std::vector<SpacingSample> sp_a, sp_b;
  for (const auto& row : samples_a) sp_a.push_back(unfold(Configuration(row), mu_a));
  for (const auto& row : samples_b) sp_b.push_back(unfold(Configuration(row), mu_b));
  auto hist_a = spacing_histogram(sp_a, config.spacing_bins);
  auto hist_b = spacing_histogram(sp_b, config.spacing_bins);
  const double spacing_ks = ks_two_sample(hist_a.sorted_gaps, hist_b.sorted_gaps);
  rows.push_back({"spacing KS", hist_a.mean_gap, 0.0, hist_b.mean_gap, 0.0, spacing_ks, 0.1,
                  spacing_ks <= 0.1});

  // reference curve check at beta = 2
  if (config.beta == 2.0 &&
      std::find(config.corr_k.begin(), config.corr_k.end(), 2) != config.corr_k.end()) {
    auto f = CorrelationTestFunction::standard(2, config.f1_radius, config.f2_radius);
    auto est_b = averaged_correlation(samples_b, mu_b, meta_b.n, 2, config.bulk_point, config.xi, f,
                                      config.seed + 4000, config.n_u);
    const double ref = sine_kernel_pair_reference(f);
    const double diff = est_b.value - ref;
    rows.push_back({"sine-kernel reference (beta=2, k=2)", est_b.value, est_b.std_error, ref, 0.0,
                    diff, 3.0 * est_b.std_error, std::abs(diff) <= 3.0 * est_b.std_error});
  }

  bool all_pass = true;
  std::ostringstream report;
  report << "comparison verdicts (A = " << file_a << ", B = " << file_b << ")\n";
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    report << (row.pass ? "  PASS  " : "  FAIL  ") << row.name << ": A = " << row.a_value;
    if (row.a_err > 0) report << " +- " << row.a_err;
    report << ", B = " << row.b_value;
    if (row.b_err > 0) report << " +- " << row.b_err;
    report << ", diff = " << row.diff << ", tolerance " << row.tol << "\n";
  }
  std::cout << report.str();
  {
    std::ofstream os(out_path(config, "compare_report.txt"));
    os << report.str();
    std::ofstream cs(out_path(config, "compare.csv"));
    cs << "check,a_value,a_err,b_value,b_err,diff,tolerance,pass\n";
    for (const auto& row : rows)
      cs << row.name << "," << format_double(row.a_value) << "," << format_double(row.a_err) << ","
         << format_double(row.b_value) << "," << format_double(row.b_err) << ","
         << format_double(row.diff) << "," << format_double(row.tol) << "," << (row.pass ? 1 : 0)
         << "\n";
  }
  {
    std::vector<double> centers_a(hist_a.mass.size()), centers_b(hist_b.mass.size());
    for (std::size_t b = 0; b < hist_a.mass.size(); ++b)
      centers_a[b] = 0.5 * (hist_a.edges[b] + hist_a.edges[b + 1]);
    for (std::size_t b = 0; b < hist_b.mass.size(); ++b)
      centers_b[b] = 0.5 * (hist_b.edges[b] + hist_b.edges[b + 1]);
    SvgPlot plot("bulk spacing comparison (KS " + std::to_string(spacing_ks) + ")", "s", "mass");
    plot.add_line(centers_a, hist_a.mass, "modified");
    plot.add_line(centers_b, hist_b.mass, "reference");
    plot.write(out_path(config, "spacing_compare.svg"));
  }

  Manifest manifest("compare", serialize_config(config));
  manifest.set_result("spacing_ks", spacing_ks);
  manifest.set_result("all_pass", all_pass ? "yes" : "no");
  manifest.add_output(out_path(config, "compare.csv"));
  manifest.write(out_path(config, "compare_manifest.json"));

  return all_pass ? exit_code::ok : exit_code::checks_failed;
}

}  // namespace loggas
