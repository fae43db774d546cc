#ifndef LOGGAS_QUADRATURE_HPP
#define LOGGAS_QUADRATURE_HPP

#include <functional>
#include <utility>
#include <vector>

namespace loggas {

// Gauss-Legendre nodes and weights on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b);

double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b, int n);

// Composite Gauss-Legendre: `panels` panels of `nodes_per_panel` nodes each.
double integrate_composite_gl(const std::function<double(double)>& f, double a, double b,
                              int panels, int nodes_per_panel = 24);

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-12, int max_depth = 40);

}  // namespace loggas

#endif
