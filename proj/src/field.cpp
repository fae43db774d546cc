#include "loggas/field.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace loggas {

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::gaussian: return "gaussian";
    case FieldKind::even_polynomial: return "even-polynomial";
    case FieldKind::gaussian_plus_bump: return "gaussian-plus-bump";
  }
  return "?";
}

FieldKind field_kind_from_string(const std::string& name) {
  if (name == "gaussian") return FieldKind::gaussian;
  if (name == "even-polynomial") return FieldKind::even_polynomial;
  if (name == "gaussian-plus-bump") return FieldKind::gaussian_plus_bump;
  throw std::invalid_argument("unknown field kind: " + name);
}

ExternalField::ExternalField(FieldKind kind, std::vector<double> coefficients, double domain_bound)
    : kind_(kind), coeffs_(std::move(coefficients)), bound_(domain_bound) {
  if (!(bound_ > 0.0)) throw std::invalid_argument("ExternalField: domain bound must be positive");
  switch (kind_) {
    case FieldKind::gaussian:
      if (coeffs_.size() != 1) throw std::invalid_argument("ExternalField: gaussian takes one coefficient");
      break;
    case FieldKind::even_polynomial:
      if (coeffs_.empty()) throw std::invalid_argument("ExternalField: even-polynomial needs coefficients");
      break;
    case FieldKind::gaussian_plus_bump:
      if (coeffs_.size() != 3) throw std::invalid_argument("ExternalField: gaussian-plus-bump takes {c, A, w}");
      if (!(coeffs_[2] > 0.0)) throw std::invalid_argument("ExternalField: bump width must be positive");
      break;
  }
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw std::invalid_argument("ExternalField: coefficients must be finite");

  // Strong convexity on the window, checked on a dense grid.
  const int n = 4097;
  double min_q2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double t = -bound_ + 2.0 * bound_ * static_cast<double>(i) / (n - 1);
    min_q2 = std::min(min_q2, second_deriv(t));
  }
  alpha_q_ = min_q2;
  if (!(alpha_q_ > 0.0))
    throw std::invalid_argument("ExternalField: not strongly convex on [-L, L] (min Q'' = " +
                                std::to_string(alpha_q_) + ")");
}

double ExternalField::operator()(double t) const {
  switch (kind_) {
    case FieldKind::gaussian:
      return coeffs_[0] * t * t;
    case FieldKind::even_polynomial: {
      const double t2 = t * t;
      double acc = 0.0, p = 1.0;
      for (double c : coeffs_) {
        p *= t2;
        acc += c * p;
      }
      return acc;
    }
    case FieldKind::gaussian_plus_bump:
      return coeffs_[0] * t * t + coeffs_[1] * std::exp(-coeffs_[2] * t * t);
  }
  return 0.0;
}

double ExternalField::deriv(double t) const {
  switch (kind_) {
    case FieldKind::gaussian:
      return 2.0 * coeffs_[0] * t;
    case FieldKind::even_polynomial: {
      const double t2 = t * t;
      double acc = 0.0, p = 1.0;  // p = t^(2k-1) built as t * t2^(k-1)
      for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        acc += coeffs_[k - 1] * 2.0 * static_cast<double>(k) * p * t;
        p *= t2;
      }
      return acc;
    }
    case FieldKind::gaussian_plus_bump: {
      const double w = coeffs_[2];
      return 2.0 * coeffs_[0] * t - 2.0 * w * t * coeffs_[1] * std::exp(-w * t * t);
    }
  }
  return 0.0;
}

double ExternalField::second_deriv(double t) const {
  switch (kind_) {
    case FieldKind::gaussian:
      return 2.0 * coeffs_[0];
    case FieldKind::even_polynomial: {
      const double t2 = t * t;
      double acc = 0.0, p = 1.0;  // p = t^(2k-2)
      for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        const double kk = static_cast<double>(k);
        acc += coeffs_[k - 1] * 2.0 * kk * (2.0 * kk - 1.0) * p;
        p *= t2;
      }
      return acc;
    }
    case FieldKind::gaussian_plus_bump: {
      const double w = coeffs_[2], t2 = t * t;
      return 2.0 * coeffs_[0] + coeffs_[1] * std::exp(-w * t2) * (4.0 * w * w * t2 - 2.0 * w);
    }
  }
  return 0.0;
}

bool ExternalField::growth_ok(double beta) const {
  if (bound_ <= 1.0) return true;
  return (*this)(bound_) > beta * std::log(bound_);
}

bool ExternalField::is_unit_gaussian() const {
  return kind_ == FieldKind::gaussian && coeffs_[0] == 1.0;
}

std::string ExternalField::descriptor() const {
  std::ostringstream os;
  os << to_string(kind_) << ";coeffs=";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ":";
    os << coeffs_[i];
  }
  os << ";bound=" << bound_;
  return os.str();
}

}  // namespace loggas
