#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace vlasov {

enum class InterpolationScheme { linear, cubic_spline };

InterpolationScheme parse_interpolation(std::string_view name);
std::string_view to_string(InterpolationScheme scheme);

// Periodic cubic spline through samples at x_j = j*h, period n*h.
class PeriodicSpline {
 public:
  PeriodicSpline(std::span<const double> values, double h);

  double operator()(double x) const;
  double second_derivative(std::size_t node) const;
  // Exact integral over [x_j, x_{j+1}].
  double cell_integral(std::size_t node) const;

 private:
  double h_;
  std::vector<double> values_;
  std::vector<double> coefficients_;  // uniform cubic B-spline coefficients
};

// Evaluates the periodic interpolant of `values` (period n*h) at the points
// i*h - delta. Any finite delta is accepted.
std::vector<double> shift_periodic(std::span<const double> values, double delta, double h,
                                   InterpolationScheme scheme);

// Evaluates at i*h - delta the interpolant of `values` extended by zeros
// beyond [0, (n-1)h] (a natural spline on the zero-padded samples for the
// cubic scheme). Shifts of more than n+1 cells return all zeros.
std::vector<double> shift_bounded(std::span<const double> values, double delta, double h,
                                  InterpolationScheme scheme);

}  // namespace vlasov
