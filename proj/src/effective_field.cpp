#include "loggas/effective_field.hpp"

#include <cmath>
#include <utility>

#include "loggas/hoeffding.hpp"

namespace loggas {

EffectiveField::EffectiveField(ExternalField base) : base_(std::move(base)) {}

EffectiveField::EffectiveField(ExternalField base, InteractionPotential h, GridMeasure mu, int n_nodes)
    : base_(std::move(base)) {
  if (h.is_zero()) return;
  const double pad = 2.0;
  const double lo = mu.left() - pad, hi = mu.right() + pad;
  auto value = ChebyshevSeries::fit([&](double s) { return convolve_at(h, mu, s); }, lo, hi, n_nodes);
  auto deriv = value.derivative();
  conv_ = std::make_shared<const Convolution>(Convolution{
      std::move(h), std::move(mu), std::move(value), std::move(deriv), lo, hi});
}

double EffectiveField::operator()(double t) const {
  double v = base_(t);
  if (conv_) {
    if (t >= conv_->fit_left && t <= conv_->fit_right)
      v += conv_->value(t);
    else
      v += convolve_at(conv_->h, conv_->mu, t);
  }
  return v;
}

double EffectiveField::deriv(double t) const {
  double v = base_.deriv(t);
  if (conv_) {
    if (t >= conv_->fit_left && t <= conv_->fit_right)
      v += conv_->deriv(t);
    else
      v += convolve_deriv_at(conv_->h, conv_->mu, t);
  }
  return v;
}

std::string EffectiveField::descriptor() const {
  std::string d = base_.descriptor();
  if (conv_) d += ";conv=" + conv_->h.descriptor();
  return d;
}

}  // namespace loggas
