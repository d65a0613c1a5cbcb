#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vlasov/analysis.hpp"
#include "vlasov/config.hpp"
#include "vlasov/splitting.hpp"

namespace vlasov {

// ---- run -------------------------------------------------------------------

struct RunSummary {
  std::filesystem::path diagnostics_csv;
  std::filesystem::path final_snapshot;
  std::vector<std::filesystem::path> snapshots;  // cadence snapshots, excluding the final one
  IntegrationResult result;
};

// Integrates the Landau initial condition described by cfg and writes
// diagnostics.csv plus final.snap (and step_NNNNNN.snap every
// cfg.snapshot_every steps) into cfg.output_dir.
RunSummary run_simulation(const RunConfig& cfg, std::ostream& log);

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StepRecord>& records);

// ---- convergence -------------------------------------------------------------

struct ConvergenceRow {
  double tau;
  double error;
};

struct ConvergenceReport {
  SplittingMethod method;
  double tau_ref;               // step actually used for the reference run
  std::size_t reference_steps;
  std::vector<ConvergenceRow> rows;
  analysis::OrderFit fit;
};

// Reference step count for a requested reference step: the smallest n with
// t_end / n <= tau_ref (up to 1e-9 relative slack).
std::size_t reference_step_count(double t_end, double tau_ref);

// Runs the self-convergence study for one method: a reference at tau_ref
// (cached on disk under cache_dir when given), then one run per tau,
// measuring the L1 distance at t_end.
ConvergenceReport run_convergence(const RunConfig& base, SplittingMethod method,
                                  const std::vector<double>& taus, double tau_ref,
                                  const std::optional<std::filesystem::path>& cache_dir,
                                  std::ostream& log);

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report);
void write_convergence_summary(const std::filesystem::path& path,
                               const std::vector<ConvergenceReport>& reports);

// 64-bit FNV-1a of the canonical configuration text; keys cached references.
std::string config_hash(const RunConfig& cfg);

// ---- verify ------------------------------------------------------------------

struct VerifyOptions {
  double phi_tolerance = 1e-12;
  double phi_closed_form_tolerance = 1e-11;
  double groebner_tolerance = 1e-8;
  double field_oracle_tolerance = 1e-12;
  double integer_shift_tolerance = 1e-13;
  double order_band = 0.3;
};

struct PropertyResult {
  std::string suite;
  std::string property;
  double measured;
  double threshold;
  bool passed;
};

std::vector<PropertyResult> run_verification(const VerifyOptions& options);

// Full-precision scientific formatting used in every CSV.
std::string format_number(double value);

}  // namespace vlasov
