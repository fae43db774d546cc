#include "loggas/grid_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace loggas {

GridMeasure::GridMeasure(double left, double right, std::vector<double> weights)
    : left_(left), right_(right), weights_(std::move(weights)) {
  if (!(right_ > left_)) throw std::invalid_argument("GridMeasure: right must exceed left");
  if (weights_.empty()) throw std::invalid_argument("GridMeasure: needs at least one cell");
  dx_ = (right_ - left_) / static_cast<double>(weights_.size());
  double mass = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("GridMeasure: weights must be finite and nonnegative");
    mass += w;
  }
  if (std::abs(mass - 1.0) > kMassTolerance)
    throw std::invalid_argument("GridMeasure: weights must sum to 1 within 1e-12");
}

GridMeasure GridMeasure::normalized(double left, double right, std::vector<double> weights) {
  double mass = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(mass > 0.0)) throw std::invalid_argument("GridMeasure::normalized: total mass must be positive");
  for (double& w : weights) w /= mass;
  // Pin the sum exactly to 1 by dumping the rounding drift on the largest cell.
  double drift = std::accumulate(weights.begin(), weights.end(), 0.0) - 1.0;
  auto it = std::max_element(weights.begin(), weights.end());
  *it -= drift;
  return GridMeasure(left, right, std::move(weights));
}

GridMeasure GridMeasure::uniform(double left, double right, std::size_t n_cells) {
  std::vector<double> w(n_cells, 1.0 / static_cast<double>(n_cells));
  return normalized(left, right, std::move(w));
}

GridMeasure GridMeasure::point_mass(double at, double width) {
  return GridMeasure(at - width / 2.0, at + width / 2.0, {1.0});
}

double GridMeasure::density_at(double x) const {
  if (x < left_ || x > right_) return 0.0;
  const double u = (x - left_) / dx_ - 0.5;  // position in units of cells, relative to midpoints
  const auto n = static_cast<std::ptrdiff_t>(n_cells());
  const auto c0 = static_cast<std::ptrdiff_t>(std::floor(u));
  if (c0 < 0) return density(0);
  if (c0 >= n - 1) return density(static_cast<std::size_t>(n - 1));
  const double frac = u - static_cast<double>(c0);
  return (1.0 - frac) * density(static_cast<std::size_t>(c0)) + frac * density(static_cast<std::size_t>(c0) + 1);
}

double GridMeasure::cdf(double x) const {
  if (x <= left_) return 0.0;
  if (x >= right_) return 1.0;
  const double u = (x - left_) / dx_;
  auto c = static_cast<std::size_t>(u);
  if (c >= n_cells()) c = n_cells() - 1;
  double below = 0.0;
  for (std::size_t i = 0; i < c; ++i) below += weights_[i];
  return below + weights_[c] * (u - static_cast<double>(c));
}

double GridMeasure::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t c = 0; c < n_cells(); ++c) acc += weights_[c] * f(midpoint(c));
  return acc;
}

double GridMeasure::moment(int order) const {
  double acc = 0.0;
  for (std::size_t c = 0; c < n_cells(); ++c) acc += weights_[c] * std::pow(midpoint(c), order);
  return acc;
}

std::pair<std::size_t, std::size_t> GridMeasure::support_cells(double threshold) const {
  const auto npos = std::numeric_limits<std::size_t>::max();
  std::size_t lo = npos, hi = npos;
  for (std::size_t c = 0; c < n_cells(); ++c) {
    if (weights_[c] > threshold) {
      if (lo == npos) lo = c;
      hi = c;
    }
  }
  return {lo, hi};
}

std::pair<double, double> GridMeasure::support_interval(double threshold) const {
  auto [lo, hi] = support_cells(threshold);
  if (lo == std::numeric_limits<std::size_t>::max())
    throw std::runtime_error("GridMeasure: empty support");
  return {midpoint(lo), midpoint(hi)};
}

double GridMeasure::boundary_mass(double fraction) const {
  const auto n = n_cells();
  auto edge = static_cast<std::size_t>(std::ceil(fraction / 2.0 * static_cast<double>(n)));
  edge = std::min(edge, n);
  double mass = 0.0;
  for (std::size_t c = 0; c < edge; ++c) mass += weights_[c] + weights_[n - 1 - c];
  return mass;
}

double GridMeasure::l1_distance(const GridMeasure& other) const {
  if (!same_grid(other)) throw std::invalid_argument("GridMeasure::l1_distance: grids differ");
  double acc = 0.0;
  for (std::size_t c = 0; c < n_cells(); ++c) acc += std::abs(weights_[c] - other.weights_[c]);
  return acc;
}

bool GridMeasure::is_normalized(double tol) const {
  double mass = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  return std::abs(mass - 1.0) <= tol;
}

bool GridMeasure::same_grid(const GridMeasure& other) const {
  return left_ == other.left_ && right_ == other.right_ && n_cells() == other.n_cells();
}

}  // namespace loggas
