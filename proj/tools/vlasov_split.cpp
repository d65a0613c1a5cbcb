// Command-line front end: run, convergence, verify, snapshot-info.
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vlasov/config.hpp"
#include "vlasov/drivers.hpp"
#include "vlasov/errors.hpp"
#include "vlasov/snapshot.hpp"

namespace {

enum ExitCode : int { ok = 0, verification_failed = 1, config_error = 2, numerical_failure = 3 };

std::vector<double> parse_tau_list(const std::string& text) {
  std::vector<double> taus;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      taus.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw vlasov::ConfigError("--taus: cannot parse '" + item + "'");
    }
  }
  return taus;
}

int run_command(const std::string& config_path, const std::string& out_dir) {
  vlasov::RunConfig cfg = vlasov::load_run_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const auto summary = vlasov::run_simulation(cfg, std::cerr);
  const auto& last = summary.result.records.back();
  std::cout << "steps " << summary.result.records.size() << ", mass "
            << vlasov::format_number(last.mass) << ", electric energy "
            << vlasov::format_number(last.electric_energy) << '\n'
            << "wrote " << summary.diagnostics_csv.string() << " and "
            << summary.final_snapshot.string() << '\n';
  return ok;
}

int convergence_command(const std::string& config_path, const std::string& taus_text,
                        double tau_ref, const std::string& method, const std::string& out_dir) {
  vlasov::RunConfig cfg = vlasov::load_run_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const std::vector<double> taus = parse_tau_list(taus_text);

  std::vector<vlasov::SplittingMethod> methods;
  if (method == "both") {
    methods = {vlasov::SplittingMethod::strang, vlasov::SplittingMethod::lie};
  } else {
    methods = {vlasov::parse_method(method)};
  }

  std::vector<vlasov::ConvergenceReport> reports;
  for (auto m : methods) {
    reports.push_back(vlasov::run_convergence(cfg, m, taus, tau_ref, cfg.output_dir, std::cerr));
    const auto& r = reports.back();
    const auto csv = cfg.output_dir / ("convergence_" + std::string(vlasov::to_string(m)) + ".csv");
    vlasov::write_convergence_csv(csv, r);
    std::cout << vlasov::to_string(m) << ": observed order " << r.fit.slope << " (reference "
              << r.reference_steps << " steps), wrote " << csv.string() << '\n';
  }
  vlasov::write_convergence_summary(cfg.output_dir / "convergence_summary.csv", reports);
  return ok;
}

int verify_command(const vlasov::VerifyOptions& options) {
  const auto results = vlasov::run_verification(options);
  std::vector<std::string> failed;
  for (const auto& r : results) {
    std::printf("[%s] %-18s %-55s measured %.3e (threshold %.1e)\n", r.passed ? "PASS" : "FAIL",
                r.suite.c_str(), r.property.c_str(), r.measured, r.threshold);
    if (!r.passed) failed.push_back(r.suite + ": " + r.property);
  }
  if (failed.empty()) {
    std::printf("all %zu properties passed\n", results.size());
    return ok;
  }
  std::fprintf(stderr, "%zu failures:\n", failed.size());
  for (const auto& f : failed) std::fprintf(stderr, "  %s\n", f.c_str());
  return verification_failed;
}

int snapshot_info_command(const std::string& path) {
  const auto snap = vlasov::load_snapshot(path);
  const auto& h = snap.header;
  std::cout << "version " << h.version << "\nnx " << h.nx << "\nnv " << h.nv << "\nL "
            << vlasov::format_number(h.L) << "\nvmax " << vlasov::format_number(h.vmax)
            << "\ntime " << vlasov::format_number(h.time) << "\nmass "
            << vlasov::format_number(vlasov::mass(snap.field)) << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strang and Lie-Trotter splitting for the 1+1D Vlasov-Poisson equations"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("--config", config_path, "JSON configuration")->required();
  run->add_option("--out", out_dir, "output directory (overrides output.dir)");

  std::string taus = "0.125,0.0625,0.03125,0.015625";
  double tau_ref = 3.9e-3;
  std::string method = "both";
  auto* conv = app.add_subcommand("convergence", "self-convergence study in tau");
  conv->add_option("--config", config_path, "JSON configuration")->required();
  conv->add_option("--taus", taus, "comma-separated step sizes")->capture_default_str();
  conv->add_option("--tau-ref", tau_ref, "reference step size")->capture_default_str();
  conv->add_option("--method", method, "strang|lie|both")
      ->check(CLI::IsMember({"strang", "lie", "both"}))
      ->capture_default_str();
  conv->add_option("--out", out_dir, "output directory (overrides output.dir)");

  vlasov::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "run the numerical property suites");
  verify->add_option("--phi-tol", verify_options.phi_tolerance,
                     "threshold for the phi recurrence residual")
      ->capture_default_str();

  std::string snapshot_path;
  auto* info = app.add_subcommand("snapshot-info", "print a snapshot header");
  info->add_option("path", snapshot_path, "snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (*run) return run_command(config_path, out_dir);
    if (*conv) return convergence_command(config_path, taus, tau_ref, method, out_dir);
    if (*verify) return verify_command(verify_options);
    if (*info) return snapshot_info_command(snapshot_path);
  } catch (const vlasov::NumericalFailure& e) {
    std::cerr << "numerical failure (step " << e.step() << "): " << e.what() << '\n';
    return numerical_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  }
  return ok;
}
