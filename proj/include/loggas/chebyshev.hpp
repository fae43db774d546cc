#ifndef LOGGAS_CHEBYSHEV_HPP
#define LOGGAS_CHEBYSHEV_HPP

#include <functional>
#include <vector>

namespace loggas {

// Chebyshev series on [a, b], fitted at the n Chebyshev points of the first
// kind. Evaluation by Clenshaw recurrence; derivative by coefficient
// recurrence, so value and derivative come from the same approximant.
class ChebyshevSeries {
public:
  static ChebyshevSeries fit(const std::function<double(double)>& f, double a, double b, int n);

  double operator()(double x) const;
  ChebyshevSeries derivative() const;

  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

private:
  ChebyshevSeries(double a, double b, std::vector<double> coeffs);
  double a_ = -1.0;
  double b_ = 1.0;
  std::vector<double> coeffs_;
};

}  // namespace loggas

#endif
