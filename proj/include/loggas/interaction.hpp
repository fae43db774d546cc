#ifndef LOGGAS_INTERACTION_HPP
#define LOGGAS_INTERACTION_HPP

#include <string>
#include <vector>

namespace loggas {

// One Gaussian term a * exp(-b t^2) of the interaction mixture.
struct GaussianTerm {
  double amplitude = 0.0;  // a, any sign
  double width = 1.0;      // b > 0
};

// Even Schwartz pair interaction h(t) = sum_i a_i exp(-b_i t^2).
// Each term has the closed-form transform a_i / sqrt(2 b_i) * exp(-t^2/(4 b_i))
// under the symmetric convention hhat(t) = (2*pi)^(-1/2) * int e^{-its} h(s) ds.
// The default-constructed object is h == 0.
class InteractionPotential {
public:
  InteractionPotential() = default;
  explicit InteractionPotential(std::vector<GaussianTerm> terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<GaussianTerm>& terms() const { return terms_; }

  double operator()(double t) const;
  double deriv(double t) const;
  double second_deriv(double t) const;
  double fourier(double t) const;

  // sup_t(-h''), scanned on a dense grid at construction; 0 for h == 0.
  double alpha_h() const { return alpha_h_; }
  // sum_i |a_i|, a global bound on |h|.
  double sup_abs() const { return sup_abs_; }
  // hhat >= 0 everywhere (grid-checked plus the slowest-decaying term's sign).
  bool positive_semidefinite() const { return psd_; }

  // int_{|t|>T} |hhat| <= sqrt(2 pi) sum_i |a_i| erfc(T / (2 sqrt(b_i))).
  double fourier_tail_bound(double half_width) const;
  // Smallest window half-width with fourier_tail_bound below `tail_tol`.
  double fourier_half_width(double tail_tol) const;

  std::string descriptor() const;

private:
  std::vector<GaussianTerm> terms_;
  double alpha_h_ = 0.0;
  double sup_abs_ = 0.0;
  bool psd_ = true;
};

}  // namespace loggas

#endif
