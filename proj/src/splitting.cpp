#include "vlasov/splitting.hpp"

#include <cmath>
#include <string>

#include "vlasov/advection.hpp"
#include "vlasov/errors.hpp"

namespace vlasov {

namespace {

ElectricField field_of(const DistributionField& f) { return solve_field(charge_density(f)); }

ElectricField predict_from_half_stream(const DistributionField& f, const DistributionField& half,
                                       double tau, MidpointPredictor variant,
                                       InterpolationScheme scheme) {
  if (variant == MidpointPredictor::free_stream) return field_of(half);
  return field_of(advect_v(half, field_of(f), 0.5 * tau, scheme));
}

}  // namespace

SplittingMethod parse_method(std::string_view name) {
  if (name == "strang") return SplittingMethod::strang;
  if (name == "lie") return SplittingMethod::lie;
  throw ConfigError("unknown splitting method '" + std::string(name) + "'");
}

MidpointPredictor parse_midpoint(std::string_view name) {
  if (name == "free-stream" || name == "free_stream") return MidpointPredictor::free_stream;
  if (name == "lie-half" || name == "lie_half") return MidpointPredictor::lie_half;
  throw ConfigError("unknown midpoint predictor '" + std::string(name) + "'");
}

std::string_view to_string(SplittingMethod method) {
  return method == SplittingMethod::strang ? "strang" : "lie";
}

std::string_view to_string(MidpointPredictor midpoint) {
  return midpoint == MidpointPredictor::free_stream ? "free-stream" : "lie-half";
}

SchemeConfig::SchemeConfig(SplittingMethod method, MidpointPredictor midpoint,
                           InterpolationScheme interpolation, double tau, double t_end)
    : method_(method), midpoint_(midpoint), interpolation_(interpolation), tau_(tau),
      t_end_(t_end) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("scheme: tau must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("scheme: t_end must be positive");
  const double ratio = t_end / tau;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio) {
    throw ConfigError("scheme: t_end = " + std::to_string(t_end) +
                      " is not an integer multiple of tau = " + std::to_string(tau));
  }
  steps_ = static_cast<std::size_t>(n);
}

ElectricField midpoint_predict(const DistributionField& f, double tau, MidpointPredictor variant,
                               InterpolationScheme scheme) {
  if (!(tau > 0.0)) throw ConfigError("midpoint_predict: tau must be positive");
  return predict_from_half_stream(f, advect_x(f, 0.5 * tau, scheme), tau, variant, scheme);
}

DistributionField strang_step(const DistributionField& f, const SchemeConfig& cfg) {
  const double tau = cfg.tau();
  const InterpolationScheme scheme = cfg.interpolation();
  const DistributionField half = advect_x(f, 0.5 * tau, scheme);
  const ElectricField e_mid = predict_from_half_stream(f, half, tau, cfg.midpoint(), scheme);
  return advect_x(advect_v(half, e_mid, tau, scheme), 0.5 * tau, scheme);
}

DistributionField lie_step(const DistributionField& f, const SchemeConfig& cfg) {
  const DistributionField streamed = advect_x(f, cfg.tau(), cfg.interpolation());
  return advect_v(streamed, field_of(streamed), cfg.tau(), cfg.interpolation());
}

DistributionField step(const DistributionField& f, const SchemeConfig& cfg) {
  return cfg.method() == SplittingMethod::strang ? strang_step(f, cfg) : lie_step(f, cfg);
}

IntegrationResult integrate(const DistributionField& f0, const SchemeConfig& cfg) {
  return integrate(f0, cfg, [](const DistributionField&, const StepRecord&) {});
}

namespace detail {

StepRecord make_record(const DistributionField& f, std::size_t k, double tau) {
  return StepRecord{k,
                    static_cast<double>(k) * tau,
                    mass(f),
                    l1_norm(f),
                    electric_energy(field_of(f)),
                    boundary_mass(f)};
}

void check_finite(const DistributionField& f, std::size_t k) {
  if (!f.all_finite()) {
    throw NumericalFailure("non-finite density after step " + std::to_string(k), k);
  }
}

}  // namespace detail

}  // namespace vlasov
