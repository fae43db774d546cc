#ifndef LOGGAS_STATS_HPP
#define LOGGAS_STATS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "loggas/ensemble.hpp"
#include "loggas/equilibrium.hpp"
#include "loggas/grid_measure.hpp"
#include "loggas/interaction.hpp"

namespace loggas {

using SampleSet = std::vector<std::vector<double>>;  // one sorted configuration per row

struct BatchStats {
  double mean = 0.0;
  double std_error = 0.0;
  int n_batches = 0;
};

// Mean and batch-means standard error (>= 20 batches when the data allows).
BatchStats batch_means(const std::vector<double>& values, int min_batches = 20);

double sample_variance(const std::vector<double>& values);

// Kolmogorov-Smirnov distance of a sorted sample against a CDF.
double ks_statistic(const std::vector<double>& sorted_sample, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Gaussian kernel-density estimate of the one-point function, normalized to
// mass 1 on the grid. bandwidth <= 0 picks the Silverman rule on the pooled
// points.
GridMeasure empirical_density(const SampleSet& samples, const GridSpec& grid, double bandwidth = 0.0);

// ---- unfolding / spacings -------------------------------------------------

struct SpacingSample {
  std::vector<double> unfolded;  // y_i = N F_mu(x_i), nondecreasing
  std::vector<double> gaps;      // consecutive gaps with both endpoints in the bulk window
  bool outside_support_warning = false;
};

// Maps sorted positions through N * CDF(mu). Gaps are kept when both original
// endpoints lie in the central `bulk_fraction` of the support of mu.
SpacingSample unfold(const Configuration& config, const GridMeasure& mu, double bulk_fraction = 0.6);

struct SpacingHistogram {
  std::vector<double> edges;      // bins + 1 edges
  std::vector<double> mass;       // normalized to sum 1
  std::vector<double> sorted_gaps;
  double mean_gap = 0.0;
};

SpacingHistogram spacing_histogram(const std::vector<SpacingSample>& spacings, int bins = 40,
                                   double max_gap = 4.0);

// ---- locally averaged k-point correlations --------------------------------

// C-infinity bump amp * exp(1 - 1/(1 - (t/radius)^2)) on (-radius, radius).
class BumpFunction {
public:
  BumpFunction(double radius, bool unit_mass);
  double operator()(double t) const;
  double radius() const { return radius_; }
  double integral() const { return integral_; }
  std::string descriptor() const;

private:
  double radius_;
  double amplitude_;
  double integral_;
};

// f(t_1,...,t_k) = g_1(t_1) * prod_{m >= 2} g_m(t_m - t_{m-1}); smooth and
// compactly supported on R^k. g_1 carries unit mass by default so the k = 1
// estimator is calibrated to 1.
struct CorrelationTestFunction {
  std::vector<BumpFunction> factors;
  int k() const { return static_cast<int>(factors.size()); }
  std::string descriptor() const;

  static CorrelationTestFunction standard(int k, double first_radius = 3.0, double gap_radius = 2.0);
};

struct CorrelationEstimate {
  int k = 1;
  double center = 0.0;          // a
  double window = 0.0;          // s_N = N^(xi - 1)
  double xi = 0.5;
  double density_at_center = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::string test_function;
};

// Empirical version of the locally averaged scaled k-point correlation
// integral: for each sample and each u drawn uniformly from
// [a - s_N, a + s_N], sum f(A(x_{i1}-u), ..., A(x_ik}-u)) over ordered
// k-tuples of distinct indices with A = N mu(a), normalized by
// N^k (N-k)!/N!. Positions must be sorted. Throws when a is outside the bulk
// or the window leaves the support.
CorrelationEstimate averaged_correlation(const SampleSet& samples, const GridMeasure& mu, int n,
                                         int k, double a, double xi, const CorrelationTestFunction& f,
                                         std::uint64_t seed, int n_u = 16);

// Scaled two-point correlation of the beta = 2 sine-kernel process,
// 1 - (sin(pi r)/(pi r))^2, integrated against the same test-function family.
double sine_kernel_pair_reference(const CorrelationTestFunction& f);

// ---- importance diagnostics ------------------------------------------------

struct DirichletEstimate {
  double value = 0.0;
  double ess = 0.0;  // effective sample size of the e^U weights
  bool weight_warning = false;
  std::size_t n_samples = 0;
};

// Self-normalized estimate of (8N)^-1 sum_l E[e^U (d_l U)^2] / E[e^U] over
// samples from the comparison ensemble P_{N,V,beta}. Warns (flag) when the
// weight ESS drops below 50.
DirichletEstimate estimate_dirichlet(const SampleSet& samples, const InteractionPotential& h,
                                     const GridMeasure& mu);
// Same estimate with grad_u replaced by central finite differences (oracle hook).
DirichletEstimate estimate_dirichlet_fd(const SampleSet& samples, const InteractionPotential& h,
                                        const GridMeasure& mu, double fd_step = 1e-6);

struct ExpMomentEstimate {
  double lower = 0.0;
  double estimate = 0.0;
  double upper = 0.0;
  double ess = 0.0;
  bool weight_warning = false;
};

// Plain Monte Carlo estimate of E exp(lambda U) under the sampling ensemble,
// with a batch-means 2-sigma interval. Exactly 1 for h == 0 or lambda == 0.
ExpMomentEstimate exp_moment_diagnostic(const SampleSet& samples, const InteractionPotential& h,
                                        const GridMeasure& mu, double lambda);

// ---- concentration of linear statistics ------------------------------------

// Lipschitz test statistics with bounded third derivative.
struct SmoothStatistic {
  enum class Kind { cosine, sine, bump, identity_cutoff };
  Kind kind = Kind::cosine;
  double scale = 1.0;  // radius for bump/cutoff kinds, frequency for cos/sin

  double operator()(double t) const;
  std::string descriptor() const;
};

struct ConcentrationRow {
  int n = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::size_t n_samples = 0;
};

struct ConcentrationInput {
  int n;
  const SampleSet* samples;
  const GridMeasure* mu;
};

// Empirical mean/variance of sum_j f(x_j) - N int f dmu per ensemble size.
std::vector<ConcentrationRow> concentration_check(const SmoothStatistic& f,
                                                  const std::vector<ConcentrationInput>& inputs);

// Split-half stationarity diagnostic: KS distance between the pooled
// one-point samples of the two halves of a chain.
double split_half_ks(const SampleSet& samples);

}  // namespace loggas

#endif
