// Acceptance suite: one pass/fail line per criterion. Without arguments all
// criteria run; `--criterion N` runs one.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vlasov/advection.hpp"
#include "vlasov/analysis.hpp"
#include "vlasov/config.hpp"
#include "vlasov/drivers.hpp"
#include "vlasov/field.hpp"
#include "vlasov/interpolation.hpp"
#include "vlasov/splitting.hpp"

using namespace vlasov;

namespace {

const std::vector<double> kTaus = {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0};
constexpr double kTauRef = 3.9e-3;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, double a) {
  char buffer[128];
  std::snprintf(buffer, sizeof(buffer), format, a);
  return buffer;
}

RunConfig landau_config(double alpha, SplittingMethod method,
                        MidpointPredictor midpoint = MidpointPredictor::free_stream) {
  nlohmann::json doc = {{"alpha", alpha},
                        {"scheme.method", std::string(to_string(method))},
                        {"scheme.midpoint", std::string(to_string(midpoint))}};
  return parse_run_config(doc);
}

ConvergenceReport study(double alpha, SplittingMethod method) {
  std::ostringstream log;
  return run_convergence(landau_config(alpha, method), method, kTaus, kTauRef, std::nullopt, log);
}

std::string table(const ConvergenceReport& r) {
  std::string out;
  for (const auto& row : r.rows) {
    out += fmt(" tau=%.6g", row.tau) + fmt(" err=%.3e", row.error);
  }
  return out;
}

Outcome slope_in(const ConvergenceReport& r, double lo, double hi) {
  const double s = r.fit.slope;
  return {s >= lo && s <= hi, fmt("slope %.4f", s) + fmt(" in [%.1f,", lo) + fmt(" %.1f];", hi) +
                                  table(r)};
}

Outcome criterion_strang_order() { return slope_in(study(0.01, SplittingMethod::strang), 1.8, 2.2); }

Outcome criterion_lie_order() {
  const ConvergenceReport lie = study(0.01, SplittingMethod::lie);
  const ConvergenceReport strang = study(0.01, SplittingMethod::strang);
  Outcome o = slope_in(lie, 0.8, 1.2);
  bool dominated = true;
  for (std::size_t k = 0; k < lie.rows.size(); ++k) {
    dominated = dominated && strang.rows[k].error < lie.rows[k].error;
  }
  o.passed = o.passed && dominated;
  o.detail += dominated ? "; Strang < Lie at every tau" : "; Strang NOT below Lie everywhere";
  return o;
}

Outcome criterion_strong_landau() { return slope_in(study(0.5, SplittingMethod::strang), 1.7, 2.2); }

Outcome criterion_predictor_equivalence() {
  const RunConfig fs_cfg = landau_config(0.01, SplittingMethod::strang);
  const DistributionField f0 = landau_initial_condition(fs_cfg.grid, fs_cfg.alpha);
  double worst = 0.0;
  std::vector<double> all = kTaus;
  all.push_back(1.0 / static_cast<double>(reference_step_count(1.0, kTauRef)));
  std::string detail;
  for (double tau : all) {
    const SchemeConfig a(SplittingMethod::strang, MidpointPredictor::free_stream,
                         InterpolationScheme::cubic_spline, tau, 1.0);
    const SchemeConfig b(SplittingMethod::strang, MidpointPredictor::lie_half,
                         InterpolationScheme::cubic_spline, tau, 1.0);
    const double d = l1_distance(integrate(f0, a).state, integrate(f0, b).state);
    worst = std::max(worst, d);
    detail += fmt(" tau=%.6g", tau) + fmt(" L1=%.2e", d);
  }
  return {worst <= 1e-12, fmt("max L1 difference %.3e (threshold 1e-12);", worst) + detail};
}

Outcome criterion_field_solver() {
  const GridSpec grid(4.0 * std::numbers::pi, 6.0, 80, 80);
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double oracle = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> rho(grid.nx());
    double mean = 0.0;
    for (double& r : rho) mean += (r = u(rng));
    mean /= static_cast<double>(rho.size());
    for (double& r : rho) r = 1.0 + 0.5 * (r - mean);
    const ChargeDensity density(grid, rho);
    const ElectricField fast = solve_field(density);
    const ElectricField slow = kernel_field_reference(density);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      diff = std::max(diff, std::abs(fast[i] - slow[i]));
      scale = std::max(scale, std::abs(slow[i]));
    }
    oracle = std::max(oracle, diff / scale);
  }

  std::vector<double> landau(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) landau[i] = 1.0 + 0.01 * std::cos(0.5 * grid.x(i));
  const ElectricField e = solve_field(ChargeDensity(grid, landau));
  double analytic = 0.0;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    analytic = std::max(analytic, std::abs(e[i] - 0.02 * std::sin(0.5 * grid.x(i))));
  }

  std::vector<std::pair<double, double>> residuals;
  for (std::size_t nx : {40u, 80u, 160u, 320u}) {
    const GridSpec g(4.0 * std::numbers::pi, 6.0, nx, 8);
    std::vector<double> rho(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      rho[i] = 1.0 + 0.01 * std::cos(0.5 * g.x(i)) + 0.2 * std::sin(g.x(i));
    }
    const ElectricField ef = solve_field(ChargeDensity(g, rho));
    double worst = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      const double de = (ef[(i + 1) % nx] - ef[(i + nx - 1) % nx]) / (2.0 * g.dx());
      worst = std::max(worst, std::abs(de - (rho[i] - 1.0)));
    }
    residuals.emplace_back(g.dx(), worst);
  }
  const double order = analysis::observed_order(residuals).slope;
  const bool ok = oracle <= 1e-12 && analytic <= 1e-6 && order >= 1.7 && order <= 2.3;
  return {ok, fmt("oracle deviation %.2e (<= 1e-12)", oracle) +
                  fmt(", analytic error %.2e (<= 1e-6)", analytic) +
                  fmt(", Poisson residual order %.3f in [1.7, 2.3]", order)};
}

Outcome criterion_conservation() {
  const RunConfig cfg = landau_config(0.01, SplittingMethod::strang);
  const DistributionField f0 = landau_initial_condition(cfg.grid, cfg.alpha);
  const double m0 = mass(f0);
  const double n0 = l1_norm(f0);
  double mass_drift = 0.0, l1_growth = 0.0;
  std::vector<double> all = kTaus;
  all.push_back(1.0 / static_cast<double>(reference_step_count(1.0, kTauRef)));
  for (double tau : all) {
    const SchemeConfig s(SplittingMethod::strang, MidpointPredictor::free_stream,
                         InterpolationScheme::cubic_spline, tau, 1.0);
    for (const StepRecord& r : integrate(f0, s).records) {
      mass_drift = std::max(mass_drift, std::abs(r.mass - m0) / m0);
      l1_growth = std::max(l1_growth, (r.l1_norm - n0) / n0);
    }
  }
  double advect_drift = 0.0;
  for (double alpha : {0.01, 0.5}) {
    const DistributionField f = landau_initial_condition(cfg.grid, alpha);
    for (double tau : {1.0 / 16.0, 0.3, 1.7}) {
      const DistributionField out = advect_x(f, tau, InterpolationScheme::cubic_spline);
      advect_drift = std::max(advect_drift, std::abs(mass(out) - mass(f)) / mass(f));
    }
  }
  const bool ok = mass_drift <= 1e-6 && l1_growth <= 1e-6 && advect_drift <= 1e-12;
  return {ok, fmt("run mass drift %.2e (<= 1e-6)", mass_drift) +
                  fmt(", L1 growth %.2e (<= 1e-6)", l1_growth) +
                  fmt(", advect_x mass drift %.2e (<= 1e-12)", advect_drift)};
}

Outcome criterion_equilibrium() {
  const RunConfig cfg = landau_config(0.0, SplittingMethod::strang);
  const DistributionField f0 = landau_initial_condition(cfg.grid, 0.0);
  const double d = l1_distance(integrate(f0, cfg.scheme).state, f0);
  return {d <= 1e-12, fmt("L1 distance to initial state %.3e (<= 1e-12)", d)};
}

Outcome criterion_phi() {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.01, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd m(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r) {
      for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = u(rng);
    }
    m *= radius(rng) / m.eigenvalues().cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k <= 3; ++k) {
      worst = std::max(worst, analysis::phi_recurrence_residual(k, analysis::DenseOperator(m)));
    }
  }
  double closed = 0.0;
  for (double z : {-5.0, -1.0, -1e-3, 0.25, 1.0, 2.0}) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Identity(3, 3) * z;
    const analysis::DenseOperator op(d);
    closed = std::max(closed, std::abs(analysis::phi(1, op)(1, 1) - std::expm1(z) / z));
    closed = std::max(closed, std::abs(analysis::phi(2, op)(2, 2) - (std::expm1(z) - z) / (z * z)));
  }
  return {worst <= 1e-12 && closed <= 1e-11,
          fmt("recurrence residual %.2e (<= 1e-12)", worst) +
              fmt(", closed forms %.2e (<= 1e-11)", closed)};
}

Outcome criterion_groebner_alekseev() {
  const auto logistic = analysis::logistic_descriptor();
  const auto check = analysis::groebner_alekseev_check(logistic, 1.0);
  const double closed = std::abs(check.direct - 1.0 / (1.0 + std::exp(1.0)));
  bool ok = closed <= 1e-8 && check.residual <= 1e-8;
  std::string detail = fmt("logistic f(1) error %.2e", closed) +
                       fmt(", residual %.2e (<= 1e-8)", check.residual);
  for (const auto& p : {analysis::unperturbed_decay_descriptor(), analysis::linear_forced_descriptor()}) {
    const double r = analysis::groebner_alekseev_residual(p, 1.0);
    ok = ok && r <= p.residual_tolerance;
    detail += "; " + p.name + fmt(" residual %.2e", r) + fmt(" (<= %.0e)", p.residual_tolerance);
  }
  return {ok, detail};
}

Outcome criterion_interpolation() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 80;
  const double h = 4.0 * std::numbers::pi / 80.0;
  std::vector<double> data(n);
  for (double& d : data) d = u(rng);
  double scale = 0.0;
  for (double d : data) scale = std::max(scale, std::abs(d));

  double rotation = 0.0, constant = 0.0;
  std::string orders;
  bool orders_ok = true;
  for (auto [scheme, nominal] : {std::pair{InterpolationScheme::linear, 2.0},
                                 std::pair{InterpolationScheme::cubic_spline, 4.0}}) {
    for (long k : {-81L, -7L, -1L, 1L, 5L, 40L, 79L, 200L}) {
      const auto s = shift_periodic(data, static_cast<double>(k) * h, h, scheme);
      for (long i = 0; i < static_cast<long>(n); ++i) {
        const long src = ((i - k) % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n);
        rotation = std::max(rotation, std::abs(s[static_cast<std::size_t>(i)] - data[static_cast<std::size_t>(src)]) / scale);
      }
    }
    const std::vector<double> flat(n, 0.7);
    for (double delta : {0.01, 0.5, 3.3, -12.9}) {
      for (double v : shift_periodic(flat, delta, h, scheme)) constant = std::max(constant, std::abs(v - 0.7));
    }
    std::vector<std::pair<double, double>> errors;
    for (std::size_t cells : {20u, 40u, 80u, 160u}) {
      const double L = 4.0 * std::numbers::pi;
      const double dx = L / static_cast<double>(cells);
      auto exact = [](double x) { return std::exp(std::cos(0.5 * x)); };
      std::vector<double> f(cells);
      for (std::size_t i = 0; i < cells; ++i) f[i] = exact(static_cast<double>(i) * dx);
      const double delta = 0.35 * dx;
      const auto s = shift_periodic(f, delta, dx, scheme);
      double worst = 0.0;
      for (std::size_t i = 0; i < cells; ++i) {
        worst = std::max(worst, std::abs(s[i] - exact(static_cast<double>(i) * dx - delta)));
      }
      errors.emplace_back(dx, worst);
    }
    const double slope = analysis::observed_order(errors).slope;
    orders_ok = orders_ok && std::abs(slope - nominal) <= 0.3;
    orders += std::string(", ") + std::string(to_string(scheme)) + fmt(" order %.3f", slope) +
              fmt(" (nominal %.0f +- 0.3)", nominal);
  }
  const bool ok = rotation <= 1e-13 && constant <= 1e-14 && orders_ok;
  return {ok, fmt("rotation deviation %.2e (<= 1e-13)", rotation) +
                  fmt(", constant deviation %.2e", constant) + orders};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria = {
      {1, {"Strang order, weak Landau", criterion_strang_order}},
      {2, {"Lie order and Strang dominance", criterion_lie_order}},
      {3, {"Strang order, strong Landau", criterion_strong_landau}},
      {4, {"predictor equivalence", criterion_predictor_equivalence}},
      {5, {"field solver", criterion_field_solver}},
      {6, {"conservation and L1 stability", criterion_conservation}},
      {7, {"equilibrium fixed point", criterion_equilibrium}},
      {8, {"phi functions", criterion_phi}},
      {9, {"Groebner-Alekseev identity", criterion_groebner_alekseev}},
      {10, {"interpolation", criterion_interpolation}},
  };

  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--criterion" && a + 1 < argc) {
      selected.push_back(std::atoi(argv[++a]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty()) {
    for (const auto& [id, _] : criteria) selected.push_back(id);
  }

  int failures = 0;
  for (int id : selected) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome outcome;
    try {
      outcome = it->second.second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failures += outcome.passed ? 0 : 1;
    std::printf("[%s] criterion %2d (%s): %s\n", outcome.passed ? "PASS" : "FAIL", id,
                it->second.first.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
