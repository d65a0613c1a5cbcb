#include "vlasov/phase_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vlasov/errors.hpp"

namespace vlasov {

namespace {

void require_same_spec(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) {
    throw DimensionError("distribution fields live on different grids");
  }
}

void require_finite(std::span<const double> values, const char* what) {
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    throw ConfigError(std::string(what) + " contains non-finite values");
  }
}

}  // namespace

GridSpec::GridSpec(double L, double vmax, std::size_t nx, std::size_t nv)
    : L_(L), vmax_(vmax), nx_(nx), nv_(nv) {
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("grid: L must be positive and finite");
  if (!(vmax > 0.0) || !std::isfinite(vmax)) {
    throw ConfigError("grid: vmax must be positive and finite");
  }
  if (nx < 4 || nv < 4) throw ConfigError("grid: nx and nv must be at least 4");
}

DistributionField::DistributionField(const GridSpec& spec)
    : spec_(spec), values_(spec.nx() * spec.nv(), 0.0) {}

DistributionField::DistributionField(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.nx() * spec_.nv()) {
    throw DimensionError("distribution field: expected " +
                         std::to_string(spec_.nx() * spec_.nv()) + " values, got " +
                         std::to_string(values_.size()));
  }
  require_finite(values_, "distribution field");
}

bool DistributionField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ChargeDensity::ChargeDensity(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.nx()) throw DimensionError("charge density: expected nx values");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw NumericalFailure("charge density is not finite", 0);
  }
}

DistributionField landau_initial_condition(const GridSpec& spec, double alpha) {
  constexpr double wavenumber = 0.5;
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("landau: alpha must be finite and nonnegative");
  }
  if (alpha > 1.0) throw ConfigError("landau: alpha > 1 gives a negative density");
  const double periods = wavenumber * spec.L() / (2.0 * std::numbers::pi);
  if (periods < 0.5 || std::abs(periods - std::round(periods)) > 1e-9 * periods) {
    throw ConfigError("landau: L is not commensurate with the wavenumber 0.5");
  }

  DistributionField f(spec);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < spec.nx(); ++i) {
    const double modulation = 1.0 + alpha * std::cos(wavenumber * spec.x(i));
    for (std::size_t j = 0; j < spec.nv(); ++j) {
      const double v = spec.v(j);
      f(i, j) = norm * std::exp(-0.5 * v * v) * modulation;
    }
  }

  const double density = mass(f) / spec.L();
  if (std::abs(density - 1.0) > 1e-6) {
    throw ConfigError("landau: background density " + std::to_string(density) +
                      " is not 1; vmax too small or grid too coarse");
  }
  return f;
}

ChargeDensity charge_density(const DistributionField& f) {
  const GridSpec& spec = f.spec();
  std::vector<double> rho(spec.nx());
  for (std::size_t i = 0; i < spec.nx(); ++i) {
    const auto row = f.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.nv(); ++j) sum += spec.v_weight(j) * row[j];
    rho[i] = spec.dv() * sum;
  }
  return ChargeDensity(spec, std::move(rho));
}

double mass(const DistributionField& f) {
  const ChargeDensity rho = charge_density(f);
  double sum = 0.0;
  for (double r : rho.values()) sum += r;
  return f.spec().dx() * sum;
}

double l1_distance(const DistributionField& f, const DistributionField& g) {
  require_same_spec(f.spec(), g.spec());
  const auto a = f.values();
  const auto b = g.values();
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
  return f.spec().dx() * f.spec().dv() * sum;
}

double l1_norm(const DistributionField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += std::abs(v);
  return f.spec().dx() * f.spec().dv() * sum;
}

double boundary_mass(const DistributionField& f) {
  const GridSpec& spec = f.spec();
  const std::size_t last = spec.nv() - 1;
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.nx(); ++i) {
    sum += spec.v_weight(0) * f(i, 0) + spec.v_weight(last) * f(i, last);
  }
  return spec.dx() * spec.dv() * sum;
}

}  // namespace vlasov
