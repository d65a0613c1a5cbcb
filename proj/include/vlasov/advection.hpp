#pragma once

#include "vlasov/field.hpp"
#include "vlasov/interpolation.hpp"
#include "vlasov/phase_grid.hpp"

namespace vlasov {

// Free streaming f(x, v) -> f(x - v tau, v): each velocity row is shifted
// periodically in x by v_j * tau. Negative tau runs the flow backwards.
DistributionField advect_x(const DistributionField& f, double tau, InterpolationScheme scheme);

// Acceleration with a frozen field, f(x, v) -> f(x, v - tau E(x)): each
// spatial column is shifted in v by E(x_i) * tau with zero inflow.
DistributionField advect_v(const DistributionField& f, const ElectricField& E, double tau,
                           InterpolationScheme scheme);

}  // namespace vlasov
