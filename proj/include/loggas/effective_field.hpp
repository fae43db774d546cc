#ifndef LOGGAS_EFFECTIVE_FIELD_HPP
#define LOGGAS_EFFECTIVE_FIELD_HPP

#include <memory>
#include <string>

#include "loggas/chebyshev.hpp"
#include "loggas/field.hpp"
#include "loggas/grid_measure.hpp"
#include "loggas/interaction.hpp"

namespace loggas {

// One-body field used by the samplers: either a bare external field Q, or the
// effective field V = Q + h_mu of the comparison ensemble. The convolution
// term is carried as a Chebyshev interpolant (value and derivative from the
// same series), with exact summation as fallback outside the fitted window.
class EffectiveField {
public:
  explicit EffectiveField(ExternalField base);
  EffectiveField(ExternalField base, InteractionPotential h, GridMeasure mu, int n_nodes = 257);

  double operator()(double t) const;
  double deriv(double t) const;

  const ExternalField& base() const { return base_; }
  bool has_convolution() const { return conv_ != nullptr; }
  std::string descriptor() const;

private:
  struct Convolution {
    InteractionPotential h;
    GridMeasure mu;
    ChebyshevSeries value;
    ChebyshevSeries deriv;
    double fit_left;
    double fit_right;
  };
  ExternalField base_;
  std::shared_ptr<const Convolution> conv_;
};

}  // namespace loggas

#endif
