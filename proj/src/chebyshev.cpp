#include "loggas/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace loggas {

ChebyshevSeries::ChebyshevSeries(double a, double b, std::vector<double> coeffs)
    : a_(a), b_(b), coeffs_(std::move(coeffs)) {}

ChebyshevSeries ChebyshevSeries::fit(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("ChebyshevSeries: need at least 2 nodes");
  if (!(b > a)) throw std::invalid_argument("ChebyshevSeries: invalid interval");
  std::vector<double> fx(n);
  for (int k = 0; k < n; ++k) {
    const double theta = M_PI * (k + 0.5) / n;
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
    fx[k] = f(x);
  }
  std::vector<double> c(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += fx[k] * std::cos(M_PI * j * (k + 0.5) / n);
    c[j] = 2.0 * acc / n;
  }
  c[0] *= 0.5;
  return ChebyshevSeries(a, b, std::move(c));
}

double ChebyshevSeries::operator()(double x) const {
  const double z = (2.0 * x - a_ - b_) / (b_ - a_);
  double b1 = 0.0, b2 = 0.0;
  for (auto j = static_cast<int>(coeffs_.size()) - 1; j >= 1; --j) {
    const double tmp = 2.0 * z * b1 - b2 + coeffs_[j];
    b2 = b1;
    b1 = tmp;
  }
  return z * b1 - b2 + coeffs_[0];
}

ChebyshevSeries ChebyshevSeries::derivative() const {
  const auto n = static_cast<int>(coeffs_.size());
  std::vector<double> d(n, 0.0);
  if (n >= 2) {
    // recurrence d_{k-1} = d_{k+1} + 2 k c_k, run downward
    d[n - 1] = 0.0;
    if (n >= 2) d[n - 2] = 2.0 * (n - 1) * coeffs_[n - 1];
    for (int k = n - 2; k >= 1; --k) d[k - 1] = (k + 1 < n ? d[k + 1] : 0.0) + 2.0 * k * coeffs_[k];
    d[0] *= 0.5;
    const double scale = 2.0 / (b_ - a_);
    for (double& v : d) v *= scale;
  }
  return ChebyshevSeries(a_, b_, std::move(d));
}

}  // namespace loggas
