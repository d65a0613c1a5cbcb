#pragma once

#include <span>
#include <vector>

#include "vlasov/phase_grid.hpp"

namespace vlasov {

// Per-node electric field E(x_i). Construction enforces finiteness and the
// discrete zero-mean (electrostatic) condition.
class ElectricField {
 public:
  ElectricField(const GridSpec& spec, std::vector<double> values);
  static ElectricField zero(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

// Zero-mean antiderivative of the charge excess, accumulated cell by cell
// from the exact integrals of its periodic cubic spline interpolant, O(nx).
// The background is the discrete mean of rho, which must equal 1 within 1e-6.
ElectricField solve_field(const ChargeDensity& rho);

// Direct O(nx^2) quadrature of the periodic Green's function
//   K(x, y) = y/L - 1 (x < y),  y/L (y < x)
// against the same interpolant, three Gauss points per cell. Kept as the
// oracle for solve_field.
ElectricField kernel_field_reference(const ChargeDensity& rho);

// 0.5 * dx * sum E_i^2.
double electric_energy(const ElectricField& E);

}  // namespace vlasov
