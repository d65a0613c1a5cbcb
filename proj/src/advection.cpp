#include "vlasov/advection.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vlasov/errors.hpp"

namespace vlasov {

DistributionField advect_x(const DistributionField& f, double tau, InterpolationScheme scheme) {
  if (!std::isfinite(tau)) throw ConfigError("advect_x: tau must be finite");
  if (tau == 0.0) return f;
  const GridSpec& spec = f.spec();
  DistributionField out(spec);

  std::vector<double> line(spec.nx());
  for (std::size_t j = 0; j < spec.nv(); ++j) {
    for (std::size_t i = 0; i < spec.nx(); ++i) line[i] = f(i, j);
    const std::vector<double> shifted = shift_periodic(line, spec.v(j) * tau, spec.dx(), scheme);
    for (std::size_t i = 0; i < spec.nx(); ++i) out(i, j) = shifted[i];
  }
  return out;
}

DistributionField advect_v(const DistributionField& f, const ElectricField& E, double tau,
                           InterpolationScheme scheme) {
  if (!(f.spec() == E.spec())) throw DimensionError("advect_v: field and density grids differ");
  if (!std::isfinite(tau)) throw ConfigError("advect_v: tau must be finite");
  if (tau == 0.0) return f;
  const GridSpec& spec = f.spec();
  DistributionField out(spec);
  for (std::size_t i = 0; i < spec.nx(); ++i) {
    const std::vector<double> shifted = shift_bounded(f.row(i), E[i] * tau, spec.dv(), scheme);
    std::copy(shifted.begin(), shifted.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace vlasov
