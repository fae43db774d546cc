#include "loggas/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace loggas {

InteractionPotential::InteractionPotential(std::vector<GaussianTerm> terms) : terms_(std::move(terms)) {
  double b_min = std::numeric_limits<double>::infinity();
  for (const auto& term : terms_) {
    if (!std::isfinite(term.amplitude)) throw std::invalid_argument("InteractionPotential: amplitude must be finite");
    if (!(term.width > 0.0)) throw std::invalid_argument("InteractionPotential: width must be positive");
    sup_abs_ += std::abs(term.amplitude);
    b_min = std::min(b_min, term.width);
  }
  if (terms_.empty()) return;

  // alpha_h = sup(-h''); the extrema of each term live within a few 1/sqrt(b).
  const double range = 6.0 / std::sqrt(b_min);
  const int n = 8193;
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = range * static_cast<double>(i) / (n - 1);
    sup = std::max(sup, -second_deriv(t));
  }
  alpha_h_ = sup;

  // hhat >= 0: grid check out to where every term's transform is negligible,
  // plus the sign of the slowest-decaying term, which dominates the far tail.
  const auto slowest = std::min_element(terms_.begin(), terms_.end(),
                                        [](const GaussianTerm& a, const GaussianTerm& b) { return a.width < b.width; });
  psd_ = slowest->amplitude >= 0.0;
  if (psd_) {
    const double t_max = 12.0 * std::sqrt(b_min <= 0.25 ? 1.0 : 4.0 * b_min);
    for (int i = 0; i < n && psd_; ++i) {
      const double t = t_max * static_cast<double>(i) / (n - 1);
      if (fourier(t) < -1e-15 * sup_abs_) psd_ = false;
    }
  }
}

double InteractionPotential::operator()(double t) const {
  double acc = 0.0;
  for (const auto& term : terms_) acc += term.amplitude * std::exp(-term.width * t * t);
  return acc;
}

double InteractionPotential::deriv(double t) const {
  double acc = 0.0;
  for (const auto& term : terms_) acc += term.amplitude * (-2.0 * term.width * t) * std::exp(-term.width * t * t);
  return acc;
}

double InteractionPotential::second_deriv(double t) const {
  double acc = 0.0;
  for (const auto& term : terms_) {
    const double b = term.width, t2 = t * t;
    acc += term.amplitude * (4.0 * b * b * t2 - 2.0 * b) * std::exp(-b * t2);
  }
  return acc;
}

double InteractionPotential::fourier(double t) const {
  double acc = 0.0;
  for (const auto& term : terms_)
    acc += term.amplitude / std::sqrt(2.0 * term.width) * std::exp(-t * t / (4.0 * term.width));
  return acc;
}

double InteractionPotential::fourier_tail_bound(double half_width) const {
  static const double sqrt_2pi = std::sqrt(2.0 * M_PI);
  double acc = 0.0;
  for (const auto& term : terms_)
    acc += std::abs(term.amplitude) * std::erfc(half_width / (2.0 * std::sqrt(term.width)));
  return sqrt_2pi * acc;
}

double InteractionPotential::fourier_half_width(double tail_tol) const {
  if (is_zero()) return 1.0;
  double t = 1.0;
  while (fourier_tail_bound(t) > tail_tol && t < 1e4) t *= 1.3;
  return t;
}

std::string InteractionPotential::descriptor() const {
  if (terms_.empty()) return "none";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << ",";
    os << terms_[i].amplitude << ":" << terms_[i].width;
  }
  return os.str();
}

}  // namespace loggas
