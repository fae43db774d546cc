#ifndef LOGGAS_GRID_MEASURE_HPP
#define LOGGAS_GRID_MEASURE_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace loggas {

// Discrete probability measure on a uniform grid of cells over [left, right].
// Weight w_c sits at the cell midpoint; the CDF interpolates linearly inside
// each cell. Weights are nonnegative and sum to 1 within 1e-12 (enforced at
// construction).
class GridMeasure {
public:
  static constexpr double kMassTolerance = 1e-12;
  static constexpr double kSupportThreshold = 1e-10;

  GridMeasure(double left, double right, std::vector<double> weights);

  // Rescales the given nonnegative weights to total mass 1.
  static GridMeasure normalized(double left, double right, std::vector<double> weights);
  static GridMeasure uniform(double left, double right, std::size_t n_cells);
  // Single-cell measure of width `width` centered at `at`.
  static GridMeasure point_mass(double at, double width = 1e-8);

  double left() const { return left_; }
  double right() const { return right_; }
  std::size_t n_cells() const { return weights_.size(); }
  double cell_width() const { return dx_; }
  double midpoint(std::size_t c) const { return left_ + (static_cast<double>(c) + 0.5) * dx_; }
  const std::vector<double>& weights() const { return weights_; }

  // Piecewise-constant density w_c / dx.
  double density(std::size_t c) const { return weights_[c] / dx_; }
  // Density linearly interpolated between neighboring cell midpoints.
  double density_at(double x) const;
  // Piecewise-linear CDF; 0 left of the grid, 1 right of it.
  double cdf(double x) const;

  double integrate(const std::function<double(double)>& f) const;
  double moment(int order) const;
  double mean() const { return moment(1); }

  // First/last cell index with weight above `threshold`; both npos if none.
  std::pair<std::size_t, std::size_t> support_cells(double threshold = kSupportThreshold) const;
  // Midpoints of the first/last support cells.
  std::pair<double, double> support_interval(double threshold = kSupportThreshold) const;
  // Total weight in the outermost `fraction` of cells (split over both ends).
  double boundary_mass(double fraction = 0.05) const;

  // L1 distance sum_c |w_c - other.w_c|; grids must match exactly.
  double l1_distance(const GridMeasure& other) const;

  bool is_normalized(double tol = kMassTolerance) const;
  bool same_grid(const GridMeasure& other) const;

private:
  double left_;
  double right_;
  double dx_;
  std::vector<double> weights_;
};

}  // namespace loggas

#endif
