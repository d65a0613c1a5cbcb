#include "vlasov/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlasov/errors.hpp"
#include "vlasov/interpolation.hpp"

namespace vlasov {

namespace {

double discrete_mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// rho - mean(rho), after checking the mean against the unit background.
std::vector<double> charge_excess(const ChargeDensity& rho) {
  const double mean = discrete_mean(rho.values());
  if (std::abs(mean - 1.0) > 1e-6) {
    throw CompatibilityError("field: mean charge density " + std::to_string(mean) +
                             " differs from the unit background");
  }
  std::vector<double> excess(rho.values().begin(), rho.values().end());
  for (double& g : excess) g -= mean;
  return excess;
}

void subtract_mean(std::vector<double>& values) {
  const double mean = discrete_mean(values);
  for (double& v : values) v -= mean;
}

}  // namespace

ElectricField::ElectricField(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.nx()) throw DimensionError("electric field: expected nx values");
  double sum = 0.0;
  double peak = 0.0;
  for (double e : values_) {
    if (!std::isfinite(e)) throw NumericalFailure("electric field is not finite", 0);
    sum += e;
    peak = std::max(peak, std::abs(e));
  }
  if (std::abs(spec_.dx() * sum) > 1e-12 * (spec_.L() * peak + 1e-300)) {
    throw CompatibilityError("electric field violates the zero-mean condition");
  }
}

ElectricField ElectricField::zero(const GridSpec& spec) {
  return ElectricField(spec, std::vector<double>(spec.nx(), 0.0));
}

ElectricField solve_field(const ChargeDensity& rho) {
  const std::vector<double> g = charge_excess(rho);
  const PeriodicSpline spline(g, rho.spec().dx());
  std::vector<double> e(g.size());
  e[0] = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) e[i] = e[i - 1] + spline.cell_integral(i - 1);
  subtract_mean(e);
  return ElectricField(rho.spec(), std::move(e));
}

ElectricField kernel_field_reference(const ChargeDensity& rho) {
  const std::vector<double> g = charge_excess(rho);
  const GridSpec& spec = rho.spec();
  const double L = spec.L();
  const double dx = spec.dx();
  const std::size_t n = spec.nx();
  const PeriodicSpline spline(g, dx);

  // Three-point Gauss-Legendre per cell: exact for the kernel (linear in y)
  // times the cubic interpolant. Cell boundaries coincide with the kernel's
  // jump at y = x_i.
  const double r = std::sqrt(0.6);
  const double nodes[3] = {0.5 * (1.0 - r), 0.5, 0.5 * (1.0 + r)};
  const double weights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = spec.x(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (int q = 0; q < 3; ++q) {
        const double y = (static_cast<double>(k) + nodes[q]) * dx;
        const double kernel = y < x ? y / L : y / L - 1.0;
        sum += weights[q] * kernel * spline(y);
      }
    }
    e[i] = dx * sum;
  }
  subtract_mean(e);
  return ElectricField(spec, std::move(e));
}

double electric_energy(const ElectricField& E) {
  double sum = 0.0;
  for (double e : E.values()) sum += e * e;
  return 0.5 * E.spec().dx() * sum;
}

}  // namespace vlasov
