#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "loggas/ensemble.hpp"
#include "loggas/hoeffding.hpp"
#include "loggas/chebyshev.hpp"
#include "loggas/effective_field.hpp"
#include "loggas/quadrature.hpp"

using namespace loggas;

namespace {

double uni(std::mt19937_64& gen, double a, double b) {
  return a + (b - a) * std::uniform_real_distribution<double>()(gen);
}

GridMeasure random_even_measure(std::mt19937_64& gen, int m = 128, double half = 2.0) {
  std::vector<double> w(static_cast<std::size_t>(m));
  for (int c = 0; c < m / 2; ++c) {
    w[c] = uni(gen, 0.01, 1.0);
    w[m - 1 - c] = w[c];
  }
  if (m % 2) w[m / 2] = uni(gen, 0.01, 1.0);
  return GridMeasure::normalized(-half, half, std::move(w));
}

}  // namespace

TEST_CASE("external field kinds evaluate and differentiate") {
  ExternalField q(FieldKind::gaussian, {1.0}, 6.0);
  CHECK(q(2.0) == doctest::Approx(4.0));
  CHECK(q.deriv(2.0) == doctest::Approx(4.0));
  CHECK(q.second_deriv(2.0) == doctest::Approx(2.0));
  CHECK(q.alpha_q() == doctest::Approx(2.0));
  CHECK(q.is_unit_gaussian());

  ExternalField poly(FieldKind::even_polynomial, {0.5, 0.25}, 3.0);
  CHECK(poly(1.5) == doctest::Approx(0.5 * 1.5 * 1.5 + 0.25 * std::pow(1.5, 4)));

  ExternalField bump(FieldKind::gaussian_plus_bump, {1.0, 0.3, 2.0}, 6.0);
  std::mt19937_64 gen(1);
  for (int t = 0; t < 50; ++t) {
    const double v = uni(gen, -5.0, 5.0);
    for (const ExternalField* f : {&q, &poly, &bump}) {
      CHECK((*f)(v) == doctest::Approx((*f)(-v)));  // evenness
      const double fd = ((*f)(v + 1e-6) - (*f)(v - 1e-6)) / 2e-6;
      CHECK(f->deriv(v) == doctest::Approx(fd).epsilon(1e-5));
      const double fd2 = (f->deriv(v + 1e-6) - f->deriv(v - 1e-6)) / 2e-6;
      CHECK(f->second_deriv(v) == doctest::Approx(fd2).epsilon(1e-4));
    }
  }
}

TEST_CASE("field rejects non-convex and malformed inputs") {
  CHECK_THROWS_AS(ExternalField(FieldKind::gaussian, {-1.0}, 6.0), std::invalid_argument);
  // deep negative bump destroys convexity near the origin
  CHECK_THROWS_AS(ExternalField(FieldKind::gaussian_plus_bump, {0.1, 5.0, 3.0}, 6.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExternalField(FieldKind::gaussian, {1.0, 2.0}, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(ExternalField(FieldKind::gaussian, {1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("interaction mixture: transform, curvature, psd flag") {
  InteractionPotential h({{0.5, 1.0}, {-0.1, 2.0}});
  CHECK(h(0.3) == doctest::Approx(0.5 * std::exp(-0.09) - 0.1 * std::exp(-2 * 0.09)));
  CHECK(h.sup_abs() == doctest::Approx(0.6));
  CHECK(std::abs(h(50.0)) < 1e-300);  // Schwartz decay

  // transform against numerical quadrature of (2 pi)^(-1/2) int cos(ts) h(s) ds
  for (double t : {0.0, 0.7, 2.3}) {
    const double numeric = integrate_adaptive_simpson(
        [&](double s) { return std::cos(t * s) * h(s); }, -30.0, 30.0, 1e-12) / std::sqrt(2.0 * M_PI);
    CHECK(h.fourier(t) == doctest::Approx(numeric).epsilon(1e-9));
  }

  // alpha_h for a single term a e^{-b t^2} is 2ab at t = 0
  InteractionPotential single({{0.1, 1.0}});
  CHECK(single.alpha_h() == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(single.positive_semidefinite());
  InteractionPotential negative({{-0.1, 1.0}});
  CHECK(!negative.positive_semidefinite());
  CHECK(InteractionPotential().is_zero());
}

TEST_CASE("ensemble admissibility flag") {
  auto spec = EnsembleSpec::make(10, 2.0, ExternalField(), InteractionPotential({{0.1, 1.0}}));
  CHECK(spec.admissible);  // alpha_Q = 2 > 0.2
  CHECK(spec.certified());
  auto strong = EnsembleSpec::make(10, 2.0, ExternalField(), InteractionPotential({{20.0, 1.0}}));
  CHECK(!strong.admissible);  // sup(-h'') = 40 > 2
  CHECK_THROWS_AS(EnsembleSpec::make(0, 2.0, ExternalField()), std::invalid_argument);
  CHECK_THROWS_AS(EnsembleSpec::make(10, -1.0, ExternalField()), std::invalid_argument);
}

TEST_CASE("hamiltonian hand values") {
  auto spec = EnsembleSpec::make(2, 2.0, ExternalField());
  Configuration x({0.0, 1.0});
  CHECK(hamiltonian(x, spec) == doctest::Approx(2.0));  // 2*(0+1) - 2 log 1

  Configuration coincident({0.0, 0.0});
  CHECK(std::isinf(hamiltonian(coincident, spec)));

  auto spec_h = EnsembleSpec::make(2, 2.0, ExternalField(), InteractionPotential({{1.0, 1.0}}));
  CHECK(hamiltonian(x, spec_h) == doctest::Approx(2.0 + std::exp(-1.0)));

  Configuration bad({0.0, std::nan("")});
  CHECK_THROWS_AS(hamiltonian(bad, spec), std::invalid_argument);
}

TEST_CASE("hamiltonian permutation invariance is exact") {
  auto spec = EnsembleSpec::make(5, 1.5, ExternalField(), InteractionPotential({{0.2, 0.7}}));
  Configuration x({-1.2, -0.3, 0.1, 0.8, 2.0});
  Configuration y({0.8, -1.2, 2.0, 0.1, -0.3});
  CHECK(hamiltonian(x, spec) == hamiltonian(y, spec));
}

TEST_CASE("grad_hamiltonian: hand value, FD oracle, antisymmetry") {
  auto spec1 = EnsembleSpec::make(1, 2.0, ExternalField());
  auto g1 = grad_hamiltonian(Configuration({0.5}), spec1);
  CHECK(g1[0] == doctest::Approx(1.0));  // N Q'(x) = 1 * 2 * 0.5

  std::mt19937_64 gen(7);
  auto spec = EnsembleSpec::make(6, 2.0, ExternalField(), InteractionPotential({{0.3, 1.0}}));
  Configuration x;
  double pos = -1.6;
  for (int j = 0; j < 6; ++j) {
    x.positions.push_back(pos);
    pos += uni(gen, 0.2, 0.7);
  }
  auto g = grad_hamiltonian(x, spec);
  double gmax = 1.0;
  for (double v : g) gmax = std::max(gmax, std::abs(v));
  for (int l = 0; l < 6; ++l) {
    Configuration xp = x, xm = x;
    xp.positions[l] += 1e-6;
    xm.positions[l] -= 1e-6;
    const double fd = (hamiltonian(xp, spec) - hamiltonian(xm, spec)) / 2e-6;
    CHECK(std::abs(fd - g[l]) / gmax < 1e-5);
  }

  auto spec2 = EnsembleSpec::make(2, 2.0, ExternalField());
  auto ga = grad_hamiltonian(Configuration({-0.7, 0.7}), spec2);
  CHECK(ga[0] == doctest::Approx(-ga[1]));

  CHECK_THROWS_AS(grad_hamiltonian(Configuration({0.2, 0.2}), spec2), std::domain_error);
}

TEST_CASE("convolve: zero, point mass, even symmetry, rejection") {
  InteractionPotential h({{1.0, 1.0}});
  GridMeasure pm = GridMeasure::point_mass(0.8);
  CHECK(convolve_at(InteractionPotential(), pm, 0.3) == 0.0);
  CHECK(convolve_at(h, pm, 0.3) == doctest::Approx(std::exp(-0.25)).epsilon(1e-9));

  std::mt19937_64 gen(3);
  auto mu = random_even_measure(gen);
  for (double s : {0.2, 0.9, 1.7}) CHECK(convolve_at(h, mu, s) == doctest::Approx(convolve_at(h, mu, -s)));
}

TEST_CASE("double_convolve: zero, point mass, two atoms") {
  InteractionPotential h({{1.0, 1.0}});
  CHECK(double_convolve(InteractionPotential(), GridMeasure::point_mass(0.0)) == 0.0);
  CHECK(double_convolve(h, GridMeasure::point_mass(0.4)) == doctest::Approx(h(0.0)));

  // uniform on two atoms {-1, 1}: 1/4 (2 h(0) + 2 h(2)) = (1 + e^-4)/2
  GridMeasure two_atoms(-1.5, 1.5, {0.5, 0.0, 0.5});  // midpoints -1, 0, 1
  CHECK(double_convolve(h, two_atoms) == doctest::Approx(0.5 * (1.0 + std::exp(-4.0))));
  CHECK(double_convolve(h, two_atoms) >= 0.0);
}

TEST_CASE("u_direct: zero interaction, N=1 point mass") {
  InteractionPotential h({{0.7, 1.3}});
  GridMeasure pm = GridMeasure::point_mass(0.0);
  Configuration x({0.7});
  CHECK(u_direct(x, InteractionPotential(), pm) == 0.0);
  CHECK(u_direct(x, h, pm) == doctest::Approx(h(0.7) - h(0.0)).epsilon(1e-9));
}

TEST_CASE("Hoeffding decomposition identity (randomized)") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(uni(gen, 0, 30));
    std::vector<GaussianTerm> terms;
    for (int i = 0, nt = 1 + static_cast<int>(uni(gen, 0, 2.99)); i < nt; ++i)
      terms.push_back({uni(gen, -0.5, 0.5), uni(gen, 0.3, 3.0)});
    InteractionPotential h(terms);
    auto mu = random_even_measure(gen, 64 + static_cast<int>(uni(gen, 0, 100)));
    Configuration x;
    for (int j = 0; j < n; ++j) x.positions.push_back(uni(gen, -2.5, 2.5));

    double pair_sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pair_sum += h(x.positions[i] - x.positions[j]);
    double one_body = 0.0;
    for (double v : x.positions) one_body += convolve_at(h, mu, v);
    const double total = pair_sum + 0.5 * n * n * double_convolve(h, mu) + 0.5 * n * h(0.0) -
                         n * one_body + u_direct(x, h, mu);
    CHECK(std::abs(total) / std::max({1.0, std::abs(pair_sum)}) < 1e-10);
  }
}

TEST_CASE("u_fourier agrees with u_direct; sign law for psd interactions") {
  std::mt19937_64 gen(13);
  InteractionPotential psd({{0.3, 1.0}});
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(uni(gen, 0, 6));
    auto mu = random_even_measure(gen);
    Configuration x;
    for (int j = 0; j < n; ++j) x.positions.push_back(uni(gen, -2.5, 2.5));
    const double ud = u_direct(x, psd, mu);
    CHECK(std::abs(u_fourier(x, psd, mu) - ud) < 1e-6);
    CHECK(ud <= 1e-12);  // hhat >= 0 makes the statistic nonpositive
  }
  CHECK(u_fourier(Configuration({0.4}), InteractionPotential(), GridMeasure::point_mass(0.0)) == 0.0);
}

TEST_CASE("u_direct permutation invariance is exact") {
  InteractionPotential h({{0.4, 0.8}});
  std::mt19937_64 gen(17);
  auto mu = random_even_measure(gen);
  Configuration x({-1.0, 0.2, 0.5, 1.3});
  Configuration y({0.5, -1.0, 1.3, 0.2});
  CHECK(u_direct(x, h, mu) == u_direct(y, h, mu));
}

TEST_CASE("grad_u: zero for h = 0, FD oracle, antisymmetry") {
  std::mt19937_64 gen(19);
  auto mu = random_even_measure(gen);
  Configuration x({-1.1, -0.4, 0.3, 0.9, 1.6, 2.1});
  auto gz = grad_u(x, InteractionPotential(), mu);
  for (double v : gz) CHECK(v == 0.0);

  InteractionPotential h({{0.3, 1.0}, {-0.1, 2.0}});
  auto g = grad_u(x, h, mu);
  double gmax = 1.0;
  for (double v : g) gmax = std::max(gmax, std::abs(v));
  for (std::size_t l = 0; l < x.positions.size(); ++l) {
    Configuration xp = x, xm = x;
    xp.positions[l] += 1e-6;
    xm.positions[l] -= 1e-6;
    const double fd = (u_direct(xp, h, mu) - u_direct(xm, h, mu)) / 2e-6;
    CHECK(std::abs(fd - g[l]) / gmax < 1e-5);
  }

  // even-symmetric configuration, even mu: gradient antisymmetric under
  // negation-and-reversal
  Configuration sym({-1.4, -0.5, 0.5, 1.4});
  auto gs = grad_u(sym, h, mu);
  CHECK(gs[0] == doctest::Approx(-gs[3]).epsilon(1e-12));
  CHECK(gs[1] == doctest::Approx(-gs[2]).epsilon(1e-12));
}

TEST_CASE("convolve rejects non-normalized measures") {
  CHECK_THROWS_AS(GridMeasure(-1.0, 1.0, {0.5, 0.4}), std::invalid_argument);  // mass 0.9
  CHECK_THROWS_AS(GridMeasure(-1.0, 1.0, {1.2, -0.2}), std::invalid_argument);
}

TEST_CASE("chebyshev interpolant and its derivative") {
  auto f = [](double t) { return std::exp(-t * t) * std::cos(t); };
  auto series = ChebyshevSeries::fit(f, -3.0, 3.0, 64);
  auto deriv = series.derivative();
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    const double t = uni(gen, -3.0, 3.0);
    CHECK(series(t) == doctest::Approx(f(t)).epsilon(1e-12));
    const double fd = (f(t + 1e-6) - f(t - 1e-6)) / 2e-6;
    CHECK(deriv(t) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("effective field matches exact convolution sum") {
  ExternalField q;
  InteractionPotential h({{0.1, 1.0}});
  GridMeasure mu = GridMeasure::uniform(-2.0, 2.0, 256);
  EffectiveField field(q, h, mu);
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 40; ++trial) {
    const double t = uni(gen, -3.5, 3.5);
    CHECK(field(t) == doctest::Approx(q(t) + convolve_at(h, mu, t)).epsilon(1e-11));
    CHECK(field.deriv(t) == doctest::Approx(q.deriv(t) + convolve_deriv_at(h, mu, t)).epsilon(1e-9));
  }
  EffectiveField bare(q);
  CHECK(!bare.has_convolution());
  CHECK(bare(1.3) == q(1.3));
}

TEST_CASE("grid measure basics") {
  GridMeasure mu = GridMeasure::uniform(0.0, 1.0, 10);
  CHECK(mu.cdf(0.0) == 0.0);
  CHECK(mu.cdf(1.0) == 1.0);
  CHECK(mu.cdf(0.25) == doctest::Approx(0.25));
  CHECK(mu.mean() == doctest::Approx(0.5));
  auto [lo, hi] = mu.support_interval();
  CHECK(lo == doctest::Approx(0.05));
  CHECK(hi == doctest::Approx(0.95));
  CHECK(mu.boundary_mass(0.2) == doctest::Approx(0.2));
}

TEST_CASE("growth proxy guards the ensemble") {
  // Q(L) must beat beta log L at the window edge
  ExternalField weak(FieldKind::gaussian, {0.01}, 6.0);
  CHECK(!weak.growth_ok(4.0));  // 0.36 < 4 log 6
  CHECK_THROWS_AS(EnsembleSpec::make(10, 4.0, weak), std::invalid_argument);
  CHECK(ExternalField().growth_ok(4.0));
}

TEST_CASE("interaction is globally bounded by its amplitude sum") {
  InteractionPotential h({{0.4, 0.5}, {-0.3, 2.0}});
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double t = uni(gen, -20.0, 20.0);
    CHECK(std::abs(h(t)) <= h.sup_abs() + 1e-15);
  }
}

TEST_CASE("fourier window tail bound shrinks with the window") {
  InteractionPotential h({{0.5, 1.0}});
  const double wide = u_fourier_tail_bound(h, 12.0, 8);
  const double narrow = u_fourier_tail_bound(h, 2.0, 8);
  CHECK(wide < narrow);
  CHECK(wide < 1e-8);   // the auto window criterion
  CHECK(narrow > 1e-3); // a 2-unit window is genuinely too small for this h
}
