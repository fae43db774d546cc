#include "loggas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "loggas/hoeffding.hpp"
#include "loggas/quadrature.hpp"

namespace loggas {

BatchStats batch_means(const std::vector<double>& values, int min_batches) {
  BatchStats out;
  const auto n = values.size();
  if (n == 0) throw std::invalid_argument("batch_means: empty input");
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  int b = min_batches;
  if (n < static_cast<std::size_t>(2 * min_batches)) b = std::max(2, static_cast<int>(n / 2));
  if (n < 4) {
    out.n_batches = 1;
    out.std_error = 0.0;
    return out;
  }
  const std::size_t per = n / static_cast<std::size_t>(b);
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(b));
  for (int k = 0; k < b; ++k) {
    const std::size_t lo = static_cast<std::size_t>(k) * per;
    const std::size_t hi = (k == b - 1) ? n : lo + per;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += values[i];
    means.push_back(acc / static_cast<double>(hi - lo));
  }
  double var = 0.0;
  for (double m : means) var += (m - out.mean) * (m - out.mean);
  var /= static_cast<double>(b - 1);
  out.std_error = std::sqrt(var / static_cast<double>(b));
  out.n_batches = b;
  return out;
}

double sample_variance(const std::vector<double>& values) {
  const auto n = values.size();
  if (n < 2) return 0.0;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(n - 1);
}

double ks_statistic(const std::vector<double>& sorted_sample, const std::function<double(double)>& cdf) {
  const auto n = sorted_sample.size();
  if (n == 0) throw std::invalid_argument("ks_statistic: empty sample");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double F = cdf(sorted_sample[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / static_cast<double>(n) - F));
    d = std::max(d, std::abs(F - static_cast<double>(i) / static_cast<double>(n)));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

GridMeasure empirical_density(const SampleSet& samples, const GridSpec& grid, double bandwidth) {
  if (samples.empty()) throw std::invalid_argument("empirical_density: no samples");
  std::vector<double> points;
  for (const auto& row : samples)
    for (double v : row) points.push_back(v);
  const auto m = points.size();
  if (m == 0) throw std::invalid_argument("empirical_density: no points");

  if (bandwidth <= 0.0) {
    // Silverman on the pooled cloud
    std::vector<double> sorted(points);
    std::sort(sorted.begin(), sorted.end());
    const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(m);
    double var = 0.0;
    for (double v : sorted) var += (v - mean) * (v - mean);
    var /= std::max<std::size_t>(1, m - 1);
    const double iqr = sorted[(3 * m) / 4] - sorted[m / 4];
    double sigma = std::sqrt(var);
    if (iqr > 0.0) sigma = std::min(sigma, iqr / 1.349);
    bandwidth = 0.9 * sigma * std::pow(static_cast<double>(m), -0.2);
    if (!(bandwidth > 0.0)) bandwidth = grid.cell_width();
  }

  // bin the points, then convolve the bin counts with the sampled kernel
  const auto n = grid.n_cells;
  const double dx = grid.cell_width();
  std::vector<double> counts(n, 0.0);
  for (double v : points) {
    auto c = static_cast<std::ptrdiff_t>(std::floor((v - grid.left) / dx));
    c = std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(n) - 1);
    counts[static_cast<std::size_t>(c)] += 1.0;
  }
  const auto reach = static_cast<std::size_t>(std::ceil(8.0 * bandwidth / dx));
  std::vector<double> kernel(reach + 1);
  for (std::size_t r = 0; r <= reach; ++r) {
    const double z = static_cast<double>(r) * dx / bandwidth;
    kernel[r] = std::exp(-0.5 * z * z);
  }
  std::vector<double> weights(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    if (counts[c] == 0.0) continue;
    const std::size_t lo = c >= reach ? c - reach : 0;
    const std::size_t hi = std::min(n - 1, c + reach);
    for (std::size_t d = lo; d <= hi; ++d)
      weights[d] += counts[c] * kernel[d >= c ? d - c : c - d];
  }
  return GridMeasure::normalized(grid.left, grid.right, std::move(weights));
}

SpacingSample unfold(const Configuration& config, const GridMeasure& mu, double bulk_fraction) {
  SpacingSample out;
  std::vector<double> xs = config.positions;
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  if (n == 0) return out;
  const double nn = static_cast<double>(n);

  // merged sweep over sorted positions and cells; accumulates the partial
  // weight sums in the same order as GridMeasure::cdf, so values match it
  // exactly
  std::size_t far_outside = 0;
  out.unfolded.resize(n);
  const double dx = mu.cell_width();
  double below = 0.0;
  std::size_t cell = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double F;
    if (xs[i] <= mu.left()) {
      F = 0.0;
    } else if (xs[i] >= mu.right()) {
      F = 1.0;
    } else {
      const double u = (xs[i] - mu.left()) / dx;
      auto c = static_cast<std::size_t>(u);
      if (c >= mu.n_cells()) c = mu.n_cells() - 1;
      while (cell < c) below += mu.weights()[cell++];
      F = below + mu.weights()[c] * (u - static_cast<double>(c));
    }
    out.unfolded[i] = nn * F;
    if (F <= 1e-9 || F >= 1.0 - 1e-9) ++far_outside;
  }
  out.outside_support_warning = far_outside * 10 > n;

  auto [lo, hi] = mu.support_interval();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * bulk_fraction * (hi - lo);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (xs[i] >= mid - half && xs[i + 1] <= mid + half)
      out.gaps.push_back(out.unfolded[i + 1] - out.unfolded[i]);
  }
  return out;
}

SpacingHistogram spacing_histogram(const std::vector<SpacingSample>& spacings, int bins, double max_gap) {
  SpacingHistogram out;
  for (const auto& s : spacings)
    for (double g : s.gaps) out.sorted_gaps.push_back(g);
  if (out.sorted_gaps.size() < 1000)
    throw std::invalid_argument("spacing_histogram: need at least 1000 gaps");
  std::sort(out.sorted_gaps.begin(), out.sorted_gaps.end());
  out.mean_gap = std::accumulate(out.sorted_gaps.begin(), out.sorted_gaps.end(), 0.0) /
                 static_cast<double>(out.sorted_gaps.size());

  out.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) out.edges[static_cast<std::size_t>(b)] = max_gap * b / bins;
  out.mass.assign(static_cast<std::size_t>(bins), 0.0);
  for (double g : out.sorted_gaps) {
    auto b = static_cast<std::size_t>(g / max_gap * bins);
    if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;  // clamp overflow gaps
    out.mass[b] += 1.0;
  }
  for (double& v : out.mass) v /= static_cast<double>(out.sorted_gaps.size());
  return out;
}

BumpFunction::BumpFunction(double radius, bool unit_mass) : radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("BumpFunction: radius must be positive");
  const auto raw = [](double z) { return std::abs(z) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - z * z)) : 0.0; };
  const double base = integrate_adaptive_simpson(raw, -1.0, 1.0, 1e-13);
  if (unit_mass) {
    amplitude_ = 1.0 / (radius_ * base);
    integral_ = 1.0;
  } else {
    amplitude_ = 1.0;
    integral_ = radius_ * base;
  }
}

double BumpFunction::operator()(double t) const {
  const double z = t / radius_;
  if (std::abs(z) >= 1.0) return 0.0;
  return amplitude_ * std::exp(1.0 - 1.0 / (1.0 - z * z));
}

std::string BumpFunction::descriptor() const {
  std::ostringstream os;
  os << "bump(r=" << radius_ << ",int=" << integral_ << ")";
  return os.str();
}

std::string CorrelationTestFunction::descriptor() const {
  std::string d;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) d += "*";
    d += factors[i].descriptor();
  }
  return d;
}

CorrelationTestFunction CorrelationTestFunction::standard(int k, double first_radius, double gap_radius) {
  if (k < 1 || k > 3) throw std::invalid_argument("CorrelationTestFunction: k must be 1, 2 or 3");
  CorrelationTestFunction f;
  f.factors.emplace_back(first_radius, true);
  for (int m = 1; m < k; ++m) f.factors.emplace_back(gap_radius, false);
  return f;
}

CorrelationEstimate averaged_correlation(const SampleSet& samples, const GridMeasure& mu, int n,
                                         int k, double a, double xi, const CorrelationTestFunction& f,
                                         std::uint64_t seed, int n_u) {
  if (samples.empty()) throw std::invalid_argument("averaged_correlation: no samples");
  if (k != f.k()) throw std::invalid_argument("averaged_correlation: k and test function disagree");
  if (!(xi > 0.0 && xi <= 0.5)) throw std::invalid_argument("averaged_correlation: xi must lie in (0, 1/2]");
  if (n_u < 1) throw std::invalid_argument("averaged_correlation: need at least one window point");
  if (static_cast<int>(samples[0].size()) != n)
    throw std::invalid_argument("averaged_correlation: configuration size disagrees with N");
  if (n <= k) throw std::invalid_argument("averaged_correlation: need N > k");

  const double density = mu.density_at(a);
  auto [lo, hi] = mu.support_interval();
  if (!(density > 0.0) || a <= lo || a >= hi)
    throw std::invalid_argument("averaged_correlation: center lies outside the bulk");
  const double s_n = std::pow(static_cast<double>(n), xi - 1.0);
  if (a - s_n < lo || a + s_n > hi)
    throw std::invalid_argument("averaged_correlation: averaging window leaves the support");

  const double A = static_cast<double>(n) * density;
  const double r1 = f.factors[0].radius() / A;
  const double r2 = k >= 2 ? f.factors[1].radius() / A : 0.0;
  const double r3 = k >= 3 ? f.factors[2].radius() / A : 0.0;

  double norm = 1.0;
  for (int m = 1; m < k; ++m) norm *= static_cast<double>(n) / static_cast<double>(n - m);

  std::mt19937_64 gen(seed);
  std::vector<double> per_sample;
  per_sample.reserve(samples.size());
  std::vector<double> sorted_row;

  for (const auto& row : samples) {
    const std::vector<double>* xs = &row;
    if (!std::is_sorted(row.begin(), row.end())) {
      sorted_row = row;
      std::sort(sorted_row.begin(), sorted_row.end());
      xs = &sorted_row;
    }
    double acc_u = 0.0;
    for (int iu = 0; iu < n_u; ++iu) {
      const double u = a + s_n * (2.0 * std::uniform_real_distribution<double>()(gen) - 1.0);
      double acc = 0.0;
      const auto i_lo = std::lower_bound(xs->begin(), xs->end(), u - r1);
      const auto i_hi = std::upper_bound(xs->begin(), xs->end(), u + r1);
      for (auto it = i_lo; it != i_hi; ++it) {
        const double xi1 = *it;
        const double v1 = f.factors[0](A * (xi1 - u));
        if (v1 == 0.0) continue;
        if (k == 1) {
          acc += v1;
          continue;
        }
        const auto j_lo = std::lower_bound(xs->begin(), xs->end(), xi1 - r2);
        const auto j_hi = std::upper_bound(xs->begin(), xs->end(), xi1 + r2);
        for (auto jt = j_lo; jt != j_hi; ++jt) {
          if (jt == it) continue;
          const double xi2 = *jt;
          const double v2 = f.factors[1](A * (xi2 - xi1));
          if (v2 == 0.0) continue;
          if (k == 2) {
            acc += v1 * v2;
            continue;
          }
          const auto l_lo = std::lower_bound(xs->begin(), xs->end(), xi2 - r3);
          const auto l_hi = std::upper_bound(xs->begin(), xs->end(), xi2 + r3);
          for (auto lt = l_lo; lt != l_hi; ++lt) {
            if (lt == it || lt == jt) continue;
            acc += v1 * v2 * f.factors[2](A * (*lt - xi2));
          }
        }
      }
      acc_u += acc;
    }
    per_sample.push_back(norm * acc_u / n_u);
  }

  const auto bs = batch_means(per_sample);
  CorrelationEstimate out;
  out.k = k;
  out.center = a;
  out.window = s_n;
  out.xi = xi;
  out.density_at_center = density;
  out.value = bs.mean;
  out.std_error = bs.std_error;
  out.n_samples = samples.size();
  out.test_function = f.descriptor();
  return out;
}

double sine_kernel_pair_reference(const CorrelationTestFunction& f) {
  if (f.k() != 2) throw std::invalid_argument("sine_kernel_pair_reference: needs k = 2");
  const auto& g2 = f.factors[1];
  const auto integrand = [&](double r) {
    const double s = r == 0.0 ? 1.0 : std::sin(M_PI * r) / (M_PI * r);
    return g2(r) * (1.0 - s * s);
  };
  const double R = g2.radius();
  return f.factors[0].integral() * integrate_adaptive_simpson(integrand, -R, R, 1e-11);
}

namespace {

DirichletEstimate dirichlet_impl(const SampleSet& samples, const InteractionPotential& h,
                                 const GridMeasure& mu,
                                 const std::function<std::vector<double>(const Configuration&)>& grad_fn) {
  if (samples.empty()) throw std::invalid_argument("estimate_dirichlet: no samples");
  const auto n = samples[0].size();
  DirichletEstimate out;
  out.n_samples = samples.size();
  if (h.is_zero()) {
    out.value = 0.0;
    out.ess = static_cast<double>(samples.size());
    return out;
  }
  std::vector<double> u_vals, grad_sq;
  u_vals.reserve(samples.size());
  grad_sq.reserve(samples.size());
  for (const auto& row : samples) {
    Configuration x(row);
    u_vals.push_back(u_direct(x, h, mu));
    const auto g = grad_fn(x);
    double acc = 0.0;
    for (double v : g) acc += v * v;
    grad_sq.push_back(acc);
  }
  const double u_max = *std::max_element(u_vals.begin(), u_vals.end());
  double wsum = 0.0, w2sum = 0.0, num = 0.0;
  for (std::size_t s = 0; s < u_vals.size(); ++s) {
    const double w = std::exp(u_vals[s] - u_max);
    wsum += w;
    w2sum += w * w;
    num += w * grad_sq[s];
  }
  out.value = num / wsum / (8.0 * static_cast<double>(n));
  out.ess = wsum * wsum / w2sum;
  out.weight_warning = out.ess < 50.0;
  return out;
}

}  // namespace

DirichletEstimate estimate_dirichlet(const SampleSet& samples, const InteractionPotential& h,
                                     const GridMeasure& mu) {
  return dirichlet_impl(samples, h, mu,
                        [&](const Configuration& x) { return grad_u(x, h, mu); });
}

DirichletEstimate estimate_dirichlet_fd(const SampleSet& samples, const InteractionPotential& h,
                                        const GridMeasure& mu, double fd_step) {
  return dirichlet_impl(samples, h, mu, [&](const Configuration& x) {
    std::vector<double> g(x.positions.size());
    for (std::size_t l = 0; l < g.size(); ++l) {
      Configuration xp = x, xm = x;
      xp.positions[l] += fd_step;
      xm.positions[l] -= fd_step;
      g[l] = (u_direct(xp, h, mu) - u_direct(xm, h, mu)) / (2.0 * fd_step);
    }
    return g;
  });
}

ExpMomentEstimate exp_moment_diagnostic(const SampleSet& samples, const InteractionPotential& h,
                                        const GridMeasure& mu, double lambda) {
  if (samples.empty()) throw std::invalid_argument("exp_moment_diagnostic: no samples");
  ExpMomentEstimate out;
  if (h.is_zero() || lambda == 0.0) {
    out.lower = out.estimate = out.upper = 1.0;
    out.ess = static_cast<double>(samples.size());
    return out;
  }
  std::vector<double> vals;
  vals.reserve(samples.size());
  double wsum = 0.0, w2sum = 0.0;
  for (const auto& row : samples) {
    Configuration x(row);
    const double u = u_direct(x, h, mu);
    vals.push_back(std::exp(lambda * u));
    const double w = std::exp(u);
    wsum += w;
    w2sum += w * w;
  }
  const auto bs = batch_means(vals);
  out.estimate = bs.mean;
  out.lower = bs.mean - 2.0 * bs.std_error;
  out.upper = bs.mean + 2.0 * bs.std_error;
  out.ess = wsum * wsum / w2sum;
  out.weight_warning = out.ess < 50.0;
  return out;
}

double SmoothStatistic::operator()(double t) const {
  switch (kind) {
    case Kind::cosine:
      return std::cos(scale * t);
    case Kind::sine:
      return std::sin(scale * t);
    case Kind::bump: {
      const double z = t / scale;
      return std::abs(z) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - z * z)) : 0.0;
    }
    case Kind::identity_cutoff: {
      const double z = t / scale;
      return std::abs(z) < 1.0 ? t * std::exp(1.0 - 1.0 / (1.0 - z * z)) : 0.0;
    }
  }
  return 0.0;
}

std::string SmoothStatistic::descriptor() const {
  switch (kind) {
    case Kind::cosine: return "cos(" + std::to_string(scale) + " t)";
    case Kind::sine: return "sin(" + std::to_string(scale) + " t)";
    case Kind::bump: return "bump(r=" + std::to_string(scale) + ")";
    case Kind::identity_cutoff: return "t*bump(r=" + std::to_string(scale) + ")";
  }
  return "?";
}

std::vector<ConcentrationRow> concentration_check(const SmoothStatistic& f,
                                                  const std::vector<ConcentrationInput>& inputs) {
  std::vector<ConcentrationRow> rows;
  for (const auto& input : inputs) {
    if (!input.samples || !input.mu) throw std::invalid_argument("concentration_check: null input");
    const double expected = static_cast<double>(input.n) * input.mu->integrate([&](double t) { return f(t); });
    std::vector<double> vals;
    vals.reserve(input.samples->size());
    for (const auto& row : *input.samples) {
      double acc = 0.0;
      for (double v : row) acc += f(v);
      vals.push_back(acc - expected);
    }
    ConcentrationRow r;
    r.n = input.n;
    r.n_samples = vals.size();
    r.mean = vals.empty() ? 0.0 : std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
    r.variance = sample_variance(vals);
    rows.push_back(r);
  }
  return rows;
}

double split_half_ks(const SampleSet& samples) {
  if (samples.size() < 2) throw std::invalid_argument("split_half_ks: need at least two samples");
  std::vector<double> first, second;
  const std::size_t half = samples.size() / 2;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    auto& dst = s < half ? first : second;
    for (double v : samples[s]) dst.push_back(v);
  }
  return ks_two_sample(std::move(first), std::move(second));
}

}  // namespace loggas
