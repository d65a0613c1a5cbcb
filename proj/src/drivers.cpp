#include "vlasov/drivers.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include "vlasov/advection.hpp"
#include "vlasov/errors.hpp"
#include "vlasov/field.hpp"
#include "vlasov/interpolation.hpp"
#include "vlasov/snapshot.hpp"

namespace vlasov {

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17e", value);
  return buffer;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::string step_snapshot_name(std::size_t k) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "step_%06zu.snap", k);
  return buffer;
}

}  // namespace

// ---- run ---------------------------------------------------------------------

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StepRecord>& records) {
  std::ofstream out = open_output(path);
  out << "step,t,mass,l1_norm,electric_energy,boundary_mass\n";
  for (const StepRecord& r : records) {
    out << r.step << ',' << format_number(r.time) << ',' << format_number(r.mass) << ','
        << format_number(r.l1_norm) << ',' << format_number(r.electric_energy) << ','
        << format_number(r.boundary_mass) << '\n';
  }
}

RunSummary run_simulation(const RunConfig& cfg, std::ostream& log) {
  ensure_directory(cfg.output_dir);
  const DistributionField f0 = landau_initial_condition(cfg.grid, cfg.alpha);

  std::vector<std::filesystem::path> snapshots;
  auto observer = [&](const DistributionField& state, const StepRecord& record) {
    if (cfg.snapshot_every != 0 && record.step % cfg.snapshot_every == 0 &&
        record.step != cfg.scheme.steps()) {
      const auto path = cfg.output_dir / step_snapshot_name(record.step);
      save_snapshot(path, state, record.time);
      snapshots.push_back(path);
    }
  };
  IntegrationResult result = integrate(f0, cfg.scheme, observer);
  if (result.support_warning_step) {
    log << "warning: boundary mass exceeded 1e-8 of the total mass at step "
        << *result.support_warning_step << "; increase vmax\n";
  }

  const auto csv = cfg.output_dir / "diagnostics.csv";
  write_diagnostics_csv(csv, result.records);
  const auto final_path = cfg.output_dir / "final.snap";
  save_snapshot(final_path, result.state, cfg.scheme.t_end());
  return RunSummary{csv, final_path, std::move(snapshots), std::move(result)};
}

// ---- convergence ---------------------------------------------------------------

std::string config_hash(const RunConfig& cfg) {
  nlohmann::json doc = to_json(cfg);
  doc.erase("output.dir");
  doc.erase("output.snapshot_every");
  const std::string text = doc.dump();
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, hash);
  return buffer;
}

std::size_t reference_step_count(double t_end, double tau_ref) {
  if (!(tau_ref > 0.0) || !(t_end > 0.0)) throw ConfigError("tau_ref must be positive");
  const double ratio = t_end / tau_ref;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * ratio) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

ConvergenceReport run_convergence(const RunConfig& base, SplittingMethod method,
                                  const std::vector<double>& taus, double tau_ref,
                                  const std::optional<std::filesystem::path>& cache_dir,
                                  std::ostream& log) {
  if (taus.size() < 2) throw ConfigError("convergence: need at least two step sizes");
  const double t_end = base.scheme.t_end();
  const std::size_t ref_steps = reference_step_count(t_end, tau_ref);
  const double ref_tau = t_end / static_cast<double>(ref_steps);
  const double smallest = *std::min_element(taus.begin(), taus.end());
  if (!(ref_tau < smallest / 4.0)) {
    throw ConfigError("convergence: tau_ref must be below a quarter of the smallest tau");
  }
  std::vector<RunConfig> runs;
  for (double tau : taus) runs.push_back(with_scheme(base, method, tau));

  const RunConfig ref_cfg = with_scheme(base, method, ref_tau);
  const DistributionField f0 = landau_initial_condition(base.grid, base.alpha);

  std::optional<DistributionField> reference;
  std::filesystem::path cache_path;
  if (cache_dir) {
    ensure_directory(*cache_dir);
    cache_path = *cache_dir / ("reference_" + config_hash(ref_cfg) + ".snap");
    if (std::filesystem::exists(cache_path)) {
      try {
        Snapshot snap = load_snapshot(cache_path, base.grid);
        if (snap.header.time == t_end) {
          reference = std::move(snap.field);
          log << "using cached reference " << cache_path.string() << '\n';
        }
      } catch (const std::exception& e) {
        log << "ignoring unreadable cached reference: " << e.what() << '\n';
      }
    }
  }
  if (!reference) {
    log << to_string(method) << ": reference run with " << ref_steps << " steps\n";
    reference = integrate(f0, ref_cfg.scheme).state;
    if (cache_dir) save_snapshot(cache_path, *reference, t_end);
  }

  ConvergenceReport report{method, ref_tau, ref_steps, {}, {}};
  std::vector<std::pair<double, double>> points;
  for (const RunConfig& run : runs) {
    const DistributionField state = integrate(f0, run.scheme).state;
    const double error = l1_distance(state, *reference);
    if (!(error > 0.0) || !std::isfinite(error)) {
      throw NumericalFailure("convergence: error at tau " + format_number(run.scheme.tau()) +
                                 " is not positive and finite",
                             run.scheme.steps());
    }
    log << to_string(method) << ": tau " << run.scheme.tau() << " error " << error << '\n';
    report.rows.push_back({run.scheme.tau(), error});
    points.emplace_back(run.scheme.tau(), error);
  }
  report.fit = analysis::observed_order(std::move(points));
  return report;
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report) {
  std::ofstream out = open_output(path);
  out << "tau,error,pairwise_order\n";
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    out << format_number(report.rows[k].tau) << ',' << format_number(report.rows[k].error) << ',';
    if (k > 0) out << format_number(report.fit.pairwise_orders[k - 1]);
    out << '\n';
  }
}

void write_convergence_summary(const std::filesystem::path& path,
                               const std::vector<ConvergenceReport>& reports) {
  std::ofstream out = open_output(path);
  out << "method,slope,intercept,tau_ref,reference_steps\n";
  for (const ConvergenceReport& r : reports) {
    out << to_string(r.method) << ',' << format_number(r.fit.slope) << ','
        << format_number(r.fit.intercept) << ',' << format_number(r.tau_ref) << ','
        << r.reference_steps << '\n';
  }
}

// ---- verify ----------------------------------------------------------------------

namespace {

using analysis::DenseOperator;

class Report {
 public:
  explicit Report(std::vector<PropertyResult>& out) : out_(out) {}
  // Records measured <= threshold.
  void at_most(const std::string& suite, const std::string& property, double measured,
               double threshold) {
    out_.push_back({suite, property, measured, threshold, measured <= threshold});
  }
  void within(const std::string& suite, const std::string& property, double measured,
              double nominal, double band) {
    out_.push_back({suite, property, measured, band, std::abs(measured - nominal) <= band});
  }

 private:
  std::vector<PropertyResult>& out_;
};

DenseOperator random_operator(std::mt19937_64& rng, Eigen::Index n, double radius) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = uniform(rng);
  }
  const double rho = m.eigenvalues().cwiseAbs().maxCoeff();
  return DenseOperator(m * (radius / rho));
}

void phi_suite(const VerifyOptions& opt, Report& report) {
  std::mt19937_64 rng(20140101);
  std::uniform_real_distribution<double> radius(0.05, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DenseOperator m = random_operator(rng, 4, radius(rng));
    for (std::size_t k = 0; k <= 3; ++k) {
      worst = std::max(worst, analysis::phi_recurrence_residual(k, m));
    }
  }
  report.at_most("phi", "recurrence residual, 100 random 4x4, k=0..3", worst, opt.phi_tolerance);

  double closed_form = 0.0;
  const std::vector<double> diag = {-3.0, -1.0, -0.25, 0.5, 1.0, 2.0};
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) d(i, i) = diag[static_cast<std::size_t>(i)];
  const DenseOperator dm(d);
  const DenseOperator p1 = analysis::phi(1, dm);
  const DenseOperator p2 = analysis::phi(2, dm);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double z = diag[i];
    const double phi1 = std::expm1(z) / z;
    const double phi2 = (std::expm1(z) - z) / (z * z);
    closed_form = std::max({closed_form, std::abs(p1(i, i) - phi1), std::abs(p2(i, i) - phi2)});
  }
  report.at_most("phi", "diagonal phi_1, phi_2 vs closed forms", closed_form,
                 opt.phi_closed_form_tolerance);
}

void groebner_suite(const VerifyOptions& opt, Report& report) {
  for (const auto& problem : analysis::shipped_descriptors()) {
    double worst = 0.0;
    for (double t : {0.5, 1.0, 3.0}) {
      worst = std::max(worst, analysis::groebner_alekseev_residual(problem, t));
    }
    report.at_most("groebner-alekseev", problem.name + " identity residual", worst,
                   std::min(problem.residual_tolerance, opt.groebner_tolerance));
  }
  const auto logistic = analysis::logistic_descriptor();
  const double exact = 1.0 / (1.0 + std::exp(1.0));
  report.at_most("groebner-alekseev", "logistic f(1) vs 1/(1+e)",
                 std::abs(analysis::solve_perturbed(logistic, 1.0) - exact),
                 opt.groebner_tolerance);
}

void field_suite(const VerifyOptions& opt, Report& report) {
  const GridSpec grid(4.0 * std::numbers::pi, 6.0, 80, 80);
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> noise(grid.nx());
    for (double& u : noise) u = uniform(rng);
    double mean = 0.0;
    for (double u : noise) mean += u;
    mean /= static_cast<double>(noise.size());
    std::vector<double> rho(grid.nx());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = 1.0 + 0.5 * (noise[i] - mean);
    const ChargeDensity density(grid, rho);
    const ElectricField fast = solve_field(density);
    const ElectricField slow = kernel_field_reference(density);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      diff = std::max(diff, std::abs(fast[i] - slow[i]));
      scale = std::max(scale, std::abs(slow[i]));
    }
    worst = std::max(worst, diff / scale);
  }
  report.at_most("field", "fast solve vs kernel quadrature, 50 random densities", worst,
                 opt.field_oracle_tolerance);

  std::vector<double> landau(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) landau[i] = 1.0 + 0.01 * std::cos(0.5 * grid.x(i));
  const ElectricField e = solve_field(ChargeDensity(grid, landau));
  double analytic = 0.0;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    analytic = std::max(analytic, std::abs(e[i] - 0.02 * std::sin(0.5 * grid.x(i))));
  }
  report.at_most("field", "weak Landau field vs 0.02 sin(x/2)", analytic, 1e-6);

  std::vector<std::pair<double, double>> residuals;
  for (std::size_t nx : {32u, 64u, 128u, 256u}) {
    const GridSpec g(4.0 * std::numbers::pi, 6.0, nx, 16);
    std::vector<double> rho(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = g.x(i);
      rho[i] = 1.0 + 0.3 * std::cos(0.5 * x) + 0.2 * std::sin(x);
    }
    const ElectricField ef = solve_field(ChargeDensity(g, rho));
    double worst_residual = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      const double de = (ef[(i + 1) % nx] - ef[(i + nx - 1) % nx]) / (2.0 * g.dx());
      worst_residual = std::max(worst_residual, std::abs(de - (rho[i] - 1.0)));
    }
    residuals.emplace_back(g.dx(), worst_residual);
  }
  report.within("field", "Poisson residual order under grid doubling",
                analysis::observed_order(residuals).slope, 2.0, 0.3);
}

void interpolation_suite(const VerifyOptions& opt, Report& report) {
  const std::size_t n = 64;
  const double h = 0.1;
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    data[i] = std::sin(0.37 * static_cast<double>(i)) + 0.1 * static_cast<double>(i % 7);
  }
  double scale = 0.0;
  for (double v : data) scale = std::max(scale, std::abs(v));

  double rotation = 0.0;
  for (auto scheme : {InterpolationScheme::linear, InterpolationScheme::cubic_spline}) {
    for (int k : {-5, -1, 1, 3, 17, 64, 130}) {
      const auto shifted = shift_periodic(data, k * h, h, scheme);
      for (std::size_t i = 0; i < n; ++i) {
        const auto src = static_cast<std::size_t>(
            ((static_cast<long>(i) - k) % static_cast<long>(n) + static_cast<long>(n)) %
            static_cast<long>(n));
        rotation = std::max(rotation, std::abs(shifted[i] - data[src]) / scale);
      }
    }
  }
  report.at_most("interpolation", "integer-cell shift vs index rotation", rotation,
                 opt.integer_shift_tolerance);

  double constant = 0.0;
  const std::vector<double> flat(n, 2.5);
  for (auto scheme : {InterpolationScheme::linear, InterpolationScheme::cubic_spline}) {
    for (double delta : {0.013, 0.77, -3.41, 12.345}) {
      for (double v : shift_periodic(flat, delta, h, scheme)) {
        constant = std::max(constant, std::abs(v - 2.5));
      }
    }
  }
  report.at_most("interpolation", "constant preservation", constant, 1e-14);

  for (auto [scheme, nominal] : {std::pair{InterpolationScheme::linear, 2.0},
                                 std::pair{InterpolationScheme::cubic_spline, 4.0}}) {
    std::vector<std::pair<double, double>> errors;
    for (std::size_t cells : {16u, 32u, 64u, 128u}) {
      const double spacing = 1.0 / static_cast<double>(cells);
      const double delta = 0.4 * spacing;
      std::vector<double> samples(cells);
      for (std::size_t i = 0; i < cells; ++i) {
        samples[i] = std::exp(std::sin(2.0 * std::numbers::pi * static_cast<double>(i) * spacing));
      }
      const auto shifted = shift_periodic(samples, delta, spacing, scheme);
      double worst = 0.0;
      for (std::size_t i = 0; i < cells; ++i) {
        const double x = static_cast<double>(i) * spacing - delta;
        worst = std::max(worst, std::abs(shifted[i] - std::exp(std::sin(2.0 * std::numbers::pi * x))));
      }
      errors.emplace_back(spacing, worst);
    }
    report.within("interpolation",
                  std::string(to_string(scheme)) + " convergence order (nominal " +
                      format_number(nominal).substr(0, 3) + ")",
                  analysis::observed_order(errors).slope, nominal, opt.order_band);
  }
}

}  // namespace

std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
  std::vector<PropertyResult> results;
  Report report(results);
  phi_suite(options, report);
  groebner_suite(options, report);
  field_suite(options, report);
  interpolation_suite(options, report);
  return results;
}

}  // namespace vlasov
