#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "loggas/stats.hpp"
#include "loggas/tridiagonal.hpp"

using namespace loggas;

namespace {

EquilibriumSolution solve_semicircle(double beta, std::size_t cells = 1024) {
  GridSpec grid = GridSpec::default_for(beta, cells);
  std::vector<double> v(grid.n_cells);
  for (std::size_t c = 0; c < grid.n_cells; ++c) {
    const double t = grid.midpoint(c);
    v[c] = t * t;
  }
  return solve_equilibrium(EquilibriumProblem(std::move(v), beta, grid), 1e-9);
}

SampleSet iid_uniform(std::mt19937_64& gen, int n, int n_samples) {
  SampleSet out;
  for (int s = 0; s < n_samples; ++s) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (auto& v : row) v = -1.0 + 2.0 * std::uniform_real_distribution<double>()(gen);
    std::sort(row.begin(), row.end());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TEST_CASE("batch means: iid calibration and error halving") {
  std::mt19937_64 gen(5);
  std::vector<double> values(4000);
  for (auto& v : values) v = std::normal_distribution<double>(2.0, 1.0)(gen);
  const auto bs = batch_means(values);
  CHECK(bs.n_batches >= 20);
  CHECK(bs.mean == doctest::Approx(2.0).epsilon(0.05));
  // iid: batch-means se should approximate sd/sqrt(n)
  CHECK(bs.std_error == doctest::Approx(1.0 / std::sqrt(4000.0)).epsilon(0.5));

  std::vector<double> twice(values);
  for (std::size_t i = 0; i < values.size(); ++i)
    twice.push_back(std::normal_distribution<double>(2.0, 1.0)(gen));
  const auto bs2 = batch_means(twice);
  const double ratio = bs2.std_error / bs.std_error;
  CHECK(ratio > 0.71 * 0.8);
  CHECK(ratio < 0.71 * 1.2);
}

TEST_CASE("ks statistics") {
  std::vector<double> sample{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const double d = ks_statistic(sample, [](double t) { return std::clamp(t, 0.0, 1.0); });
  CHECK(d <= 0.12);
  std::mt19937_64 gen(6);
  std::vector<double> a(5000), b(5000);
  for (auto& v : a) v = std::uniform_real_distribution<double>()(gen);
  for (auto& v : b) v = std::uniform_real_distribution<double>()(gen);
  CHECK(ks_two_sample(a, b) < 0.05);
  for (auto& v : b) v += 0.5;
  CHECK(ks_two_sample(a, b) > 0.4);
}

TEST_CASE("empirical density: degenerate input, law match, identical-law equality") {
  GridSpec grid{-3.0, 3.0, 512};
  SampleSet degenerate(200, std::vector<double>{-1.0, 0.0, 1.0});
  auto kde = empirical_density(degenerate, grid, 0.05);
  // mass concentrates near the three atoms
  double near = 0.0;
  for (std::size_t c = 0; c < grid.n_cells; ++c) {
    const double t = grid.midpoint(c);
    if (std::abs(t + 1.0) < 0.2 || std::abs(t) < 0.2 || std::abs(t - 1.0) < 0.2) near += kde.weights()[c];
  }
  CHECK(near > 0.95);
  // auto bandwidth still peaks at the atoms, not between them
  auto kde_auto = empirical_density(degenerate, grid);
  CHECK(kde_auto.density_at(0.0) > 2.0 * kde_auto.density_at(0.5));

  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(200, 2.0, 3, 500);
  GridSpec sgrid{sol.mu.left(), sol.mu.right(), sol.mu.n_cells()};
  CHECK(empirical_density(draws, sgrid).l1_distance(sol.mu) <= 0.05);

  CHECK_THROWS_AS(empirical_density(SampleSet{}, grid), std::invalid_argument);
}

TEST_CASE("unfold: uniform law is linear, output nondecreasing, warnings") {
  GridMeasure uniform = GridMeasure::uniform(0.0, 1.0, 200);
  Configuration x({0.1, 0.25, 0.5, 0.75});
  auto sp = unfold(x, uniform);
  for (std::size_t i = 0; i < x.positions.size(); ++i)
    CHECK(sp.unfolded[i] == doctest::Approx(4.0 * x.positions[i]).epsilon(1e-12));
  CHECK(std::is_sorted(sp.unfolded.begin(), sp.unfolded.end()));
  CHECK(!sp.outside_support_warning);

  Configuration outside({5.0, 6.0, 7.0, 0.5});
  CHECK(unfold(outside, uniform).outside_support_warning);
}

TEST_CASE("unfolded bulk gaps have mean 1 for the Gaussian ensemble") {
  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(200, 2.0, 5, 500);
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& row : draws) {
    auto sp = unfold(Configuration(row), sol.mu);
    for (double g : sp.gaps) {
      acc += g;
      ++count;
    }
  }
  const double mean = acc / count;
  CHECK(mean > 0.95);
  CHECK(mean < 1.05);
}

TEST_CASE("spacing histogram: normalization, Poisson law, repulsion depletion") {
  std::mt19937_64 gen(8);
  GridMeasure uniform = GridMeasure::uniform(-1.0, 1.0, 256);
  auto iid = iid_uniform(gen, 400, 60);
  std::vector<SpacingSample> sp;
  for (const auto& row : iid) sp.push_back(unfold(Configuration(row), uniform));
  auto hist = spacing_histogram(sp);
  double mass = 0.0;
  for (double v : hist.mass) mass += v;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ks_statistic(hist.sorted_gaps, [](double s) { return 1.0 - std::exp(-s); }) <= 0.03);

  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(200, 2.0, 6, 200);
  std::vector<SpacingSample> rsp;
  for (const auto& row : draws) rsp.push_back(unfold(Configuration(row), sol.mu));
  auto rhist = spacing_histogram(rsp);
  // repulsion empties the smallest-gap bin relative to Poisson
  const double poisson_small = 1.0 - std::exp(-rhist.edges[1]);
  CHECK(rhist.mass[0] < 0.25 * poisson_small);

  CHECK_THROWS_AS(spacing_histogram(std::vector<SpacingSample>{}), std::invalid_argument);
}

TEST_CASE("averaged correlation: k=1 calibrates to 1") {
  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(200, 2.0, 9, 1200);
  auto f = CorrelationTestFunction::standard(1);
  auto est = averaged_correlation(draws, sol.mu, 200, 1, 0.0, 0.5, f, 1234, 16);
  CHECK(est.window == doctest::Approx(std::pow(200.0, -0.5)));
  CHECK(std::abs(est.value - 1.0) <= 3.0 * est.std_error);
  CHECK(est.n_samples == 1200);
}

TEST_CASE("averaged correlation: iid pairs give the flat value, brute force agrees") {
  std::mt19937_64 gen(10);
  const int n = 300;
  GridMeasure uniform = GridMeasure::uniform(-1.0, 1.0, 256);
  auto iid = iid_uniform(gen, n, 800);
  auto f = CorrelationTestFunction::standard(2);
  auto est = averaged_correlation(iid, uniform, n, 2, 0.0, 0.5, f, 31, 16);
  CHECK(std::abs(est.value - f.factors[1].integral()) <= 3.0 * est.std_error + 0.02);

  // brute-force O(N^2) evaluation of the same estimator on a few samples
  const double a = 0.0, xi = 0.5;
  const double s_n = std::pow(n, xi - 1.0);
  const double A = n * uniform.density_at(a);
  std::mt19937_64 ugen(31);
  SampleSet few(iid.begin(), iid.begin() + 5);
  auto windowed = averaged_correlation(few, uniform, n, 2, a, xi, f, 31, 4);
  double brute = 0.0;
  std::mt19937_64 ugen2(31);
  for (const auto& row : few) {
    double acc_u = 0.0;
    for (int iu = 0; iu < 4; ++iu) {
      const double u = a + s_n * (2.0 * std::uniform_real_distribution<double>()(ugen2) - 1.0);
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          acc += f.factors[0](A * (row[i] - u)) * f.factors[1](A * (row[j] - row[i]));
        }
      acc_u += acc;
    }
    brute += (acc_u / 4.0) * (static_cast<double>(n) / (n - 1));
  }
  brute /= few.size();
  CHECK(windowed.value == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("averaged correlation: permutation invariance and error paths") {
  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(100, 2.0, 12, 100);
  auto f = CorrelationTestFunction::standard(1);
  auto est_sorted = averaged_correlation(draws, sol.mu, 100, 1, 0.0, 0.5, f, 7, 8);
  SampleSet shuffled = draws;
  std::mt19937_64 gen(14);
  for (auto& row : shuffled) std::shuffle(row.begin(), row.end(), gen);
  auto est_shuffled = averaged_correlation(shuffled, sol.mu, 100, 1, 0.0, 0.5, f, 7, 8);
  CHECK(est_sorted.value == est_shuffled.value);

  CHECK_THROWS_AS(averaged_correlation(draws, sol.mu, 100, 1, 5.0, 0.5, f, 7, 8),
                  std::invalid_argument);  // outside the bulk
  CHECK_THROWS_AS(averaged_correlation(draws, sol.mu, 100, 1, 1.40, 0.5, f, 7, 8),
                  std::invalid_argument);  // window leaves the support
  CHECK_THROWS_AS(averaged_correlation(draws, sol.mu, 100, 1, 0.0, 0.7, f, 7, 8),
                  std::invalid_argument);  // xi out of range
}

TEST_CASE("averaged correlation k=3 runs and stays positive") {
  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(200, 2.0, 15, 300);
  auto f = CorrelationTestFunction::standard(3);
  auto est = averaged_correlation(draws, sol.mu, 200, 3, 0.0, 0.5, f, 16, 8);
  CHECK(est.value > 0.0);
  CHECK(std::isfinite(est.std_error));
}

TEST_CASE("sine kernel reference value") {
  auto f = CorrelationTestFunction::standard(2);
  const double ref = sine_kernel_pair_reference(f);
  CHECK(ref > 0.0);
  CHECK(ref < f.factors[1].integral());  // repulsion removes mass near 0
}

TEST_CASE("dirichlet estimate: zero interaction, FD consistency") {
  auto sol = solve_semicircle(2.0, 256);
  auto draws = tridiagonal_draws(16, 2.0, 17, 200);
  CHECK(estimate_dirichlet(draws, InteractionPotential(), sol.mu).value == 0.0);

  InteractionPotential h({{0.1, 1.0}});
  auto d = estimate_dirichlet(draws, h, sol.mu);
  auto dfd = estimate_dirichlet_fd(draws, h, sol.mu);
  CHECK(d.value > 0.0);
  CHECK(std::abs(dfd.value - d.value) / d.value <= 1e-4);
  CHECK(d.ess > 50.0);
}

TEST_CASE("exp moment diagnostic: exact cases and interval") {
  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(25, 2.0, 18, 300);
  InteractionPotential h({{0.1, 1.0}});
  auto trivially_one = exp_moment_diagnostic(draws, InteractionPotential(), sol.mu, 1.0);
  CHECK(trivially_one.estimate == 1.0);
  auto lambda_zero = exp_moment_diagnostic(draws, h, sol.mu, 0.0);
  CHECK(lambda_zero.estimate == 1.0);
  auto e = exp_moment_diagnostic(draws, h, sol.mu, 1.0);
  CHECK(e.lower <= e.estimate);
  CHECK(e.estimate <= e.upper);
  CHECK(e.estimate > 0.0);
}

TEST_CASE("concentration check: constants have zero variance") {
  auto sol = solve_semicircle(2.0);
  auto draws = tridiagonal_draws(50, 2.0, 19, 100);
  // bump with huge radius is constant (= e) on the support
  SmoothStatistic constant{SmoothStatistic::Kind::bump, 1e6};
  auto rows = concentration_check(constant, {{50, &draws, &sol.mu}});
  CHECK(rows[0].variance <= 1e-20);

  SmoothStatistic cosine{SmoothStatistic::Kind::cosine, 1.0};
  auto crows = concentration_check(cosine, {{50, &draws, &sol.mu}});
  CHECK(crows[0].variance > 0.0);
  CHECK(crows[0].variance < 1.0);
}

TEST_CASE("cutoff identity statistic stays centered across ensemble sizes") {
  auto sol = solve_semicircle(2.0);
  SmoothStatistic f{SmoothStatistic::Kind::identity_cutoff, 3.0};
  for (int n : {25, 50}) {
    auto draws = tridiagonal_draws(n, 2.0, 40 + n, 1500);
    auto rows = concentration_check(f, {{n, &draws, &sol.mu}});
    const double se = std::sqrt(rows[0].variance / rows[0].n_samples);
    CHECK(std::abs(rows[0].mean) <= 3.0 * se + 0.02);
    CHECK(rows[0].variance < 1.0);
  }
}

TEST_CASE("unfold sweep matches the measure CDF exactly") {
  auto sol = solve_semicircle(2.0, 512);
  auto draws = tridiagonal_draws(60, 2.0, 77, 20);
  for (const auto& row : draws) {
    auto sp = unfold(Configuration(row), sol.mu);
    std::vector<double> sorted(row);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      CHECK(sp.unfolded[i] == 60.0 * sol.mu.cdf(sorted[i]));
  }
}
