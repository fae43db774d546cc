#ifndef LOGGAS_FIELD_HPP
#define LOGGAS_FIELD_HPP

#include <string>
#include <vector>

namespace loggas {

enum class FieldKind { gaussian, even_polynomial, gaussian_plus_bump };

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& name);

// Even, strongly convex confining field Q on the evaluation window [-L, L].
//
//   gaussian:            Q(t) = c t^2,                    coeffs = {c}
//   even-polynomial:     Q(t) = sum_k c_k t^(2k),         coeffs = {c_1, ..., c_m}
//   gaussian-plus-bump:  Q(t) = c t^2 + A exp(-w t^2),    coeffs = {c, A, w}
//
// Construction scans Q'' on a dense grid of [-L, L] and records
// alpha_q = min Q''; it throws if that minimum is not strictly positive.
class ExternalField {
public:
  // Default: the reference Gaussian field Q(t) = t^2 on [-6, 6].
  ExternalField() : ExternalField(FieldKind::gaussian, {1.0}, 6.0) {}
  ExternalField(FieldKind kind, std::vector<double> coefficients, double domain_bound);

  double operator()(double t) const;
  double deriv(double t) const;
  double second_deriv(double t) const;

  FieldKind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double domain_bound() const { return bound_; }
  double alpha_q() const { return alpha_q_; }

  // Growth proxy Q(L) > beta*log(L); trivially true for L <= 1.
  bool growth_ok(double beta) const;

  // True for Q(t) = t^2 exactly (the reference Gaussian field).
  bool is_unit_gaussian() const;

  std::string descriptor() const;

private:
  FieldKind kind_;
  std::vector<double> coeffs_;
  double bound_;
  double alpha_q_;
};

}  // namespace loggas

#endif
