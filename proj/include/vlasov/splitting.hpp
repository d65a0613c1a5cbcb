#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlasov/errors.hpp"
#include "vlasov/field.hpp"
#include "vlasov/interpolation.hpp"
#include "vlasov/phase_grid.hpp"

namespace vlasov {

enum class SplittingMethod { strang, lie };

// How the half-step state that freezes the field is predicted.
//   free_stream: f_{k+1/2} = e^{tau/2 A} f_k
//   lie_half:    f_{k+1/2} = e^{tau/2 B(f_k)} e^{tau/2 A} f_k
enum class MidpointPredictor { free_stream, lie_half };

SplittingMethod parse_method(std::string_view name);
MidpointPredictor parse_midpoint(std::string_view name);
std::string_view to_string(SplittingMethod method);
std::string_view to_string(MidpointPredictor midpoint);

class SchemeConfig {
 public:
  SchemeConfig(SplittingMethod method, MidpointPredictor midpoint,
               InterpolationScheme interpolation, double tau, double t_end);

  SplittingMethod method() const noexcept { return method_; }
  MidpointPredictor midpoint() const noexcept { return midpoint_; }
  InterpolationScheme interpolation() const noexcept { return interpolation_; }
  double tau() const noexcept { return tau_; }
  double t_end() const noexcept { return t_end_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  SplittingMethod method_;
  MidpointPredictor midpoint_;
  InterpolationScheme interpolation_;
  double tau_;
  double t_end_;
  std::size_t steps_;
};

struct StepRecord {
  std::size_t step;
  double time;
  double mass;
  double l1_norm;
  double electric_energy;
  double boundary_mass;
};

struct IntegrationResult {
  DistributionField state;
  std::vector<StepRecord> records;
  // First step whose boundary mass exceeded 1e-8 of the total mass.
  std::optional<std::size_t> support_warning_step;
};

// Field frozen over one Strang step, built from the predicted half-step state.
ElectricField midpoint_predict(const DistributionField& f, double tau, MidpointPredictor variant,
                               InterpolationScheme scheme);

// e^{tau/2 A} e^{tau B(f_{k+1/2})} e^{tau/2 A} f_k.
DistributionField strang_step(const DistributionField& f, const SchemeConfig& cfg);

// e^{tau B(g)} g with g = e^{tau A} f_k.
DistributionField lie_step(const DistributionField& f, const SchemeConfig& cfg);

DistributionField step(const DistributionField& f, const SchemeConfig& cfg);

// Applies cfg.steps() steps. Throws NumericalFailure naming the step on NaN.
// The optional observer sees the state after every step.
template <typename Observer>
IntegrationResult integrate(const DistributionField& f0, const SchemeConfig& cfg,
                            Observer&& observer);
IntegrationResult integrate(const DistributionField& f0, const SchemeConfig& cfg);

namespace detail {
StepRecord make_record(const DistributionField& f, std::size_t k, double tau);
void check_finite(const DistributionField& f, std::size_t k);
}  // namespace detail

template <typename Observer>
IntegrationResult integrate(const DistributionField& f0, const SchemeConfig& cfg,
                            Observer&& observer) {
  IntegrationResult result{f0, {}, std::nullopt};
  result.records.reserve(cfg.steps());
  for (std::size_t k = 1; k <= cfg.steps(); ++k) {
    try {
      result.state = step(result.state, cfg);
    } catch (const NumericalFailure& failure) {
      throw NumericalFailure(std::string(failure.what()) + " in step " + std::to_string(k), k);
    }
    detail::check_finite(result.state, k);
    StepRecord record = detail::make_record(result.state, k, cfg.tau());
    if (!result.support_warning_step && record.boundary_mass > 1e-8 * record.mass) {
      result.support_warning_step = k;
    }
    result.records.push_back(record);
    observer(static_cast<const DistributionField&>(result.state), record);
  }
  return result;
}

}  // namespace vlasov
