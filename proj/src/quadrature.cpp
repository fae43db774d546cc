#include "loggas/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace loggas {

namespace {

// Nodes/weights on [-1, 1], cached per order. Newton iteration on P_n with
// the standard cosine initial guess.
const std::vector<std::pair<double, double>>& reference_rule(int n) {
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> rule(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule[i] = {-x, w};
    rule[n - 1 - i] = {x, w};
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  const auto& ref = reference_rule(n);
  std::vector<std::pair<double, double>> out(ref.size());
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < ref.size(); ++i)
    out[i] = {mid + half * ref[i].first, half * ref[i].second};
  return out;
}

double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b, int n) {
  double acc = 0.0;
  for (const auto& [x, w] : gauss_legendre(n, a, b)) acc += w * f(x);
  return acc;
}

double integrate_composite_gl(const std::function<double(double)>& f, double a, double b,
                              int panels, int nodes_per_panel) {
  double acc = 0.0;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    acc += integrate_gauss_legendre(f, a + p * width, a + (p + 1) * width, nodes_per_panel);
  return acc;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return adaptive(f, a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm), tol, max_depth);
}

}  // namespace loggas
