#include "vlasov/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "vlasov/errors.hpp"

namespace vlasov::analysis {

namespace {

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                          1187353796428800.0,  129060195264000.0,   10559470521600.0,
                          670442572800.0,      33522128640.0,       1323241920.0,
                          40840800.0,          960960.0,            16380.0,
                          182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return Eigen::MatrixXd::Identity(n, n);
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const Eigen::MatrixXd s = a / std::ldexp(1.0, squarings);

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd s2 = s * s;
  const Eigen::MatrixXd s4 = s2 * s2;
  const Eigen::MatrixXd s6 = s4 * s2;
  const Eigen::MatrixXd u_inner = s6 * (b[13] * s6 + b[11] * s4 + b[9] * s2) + b[7] * s6 +
                                  b[5] * s4 + b[3] * s2 + b[1] * id;
  const Eigen::MatrixXd u = s * u_inner;
  const Eigen::MatrixXd v = s6 * (b[12] * s6 + b[10] * s4 + b[8] * s2) + b[6] * s6 + b[4] * s4 +
                            b[2] * s2 + b[0] * id;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

double factorial(std::size_t k) {
  double out = 1.0;
  for (std::size_t i = 2; i <= k; ++i) out *= static_cast<double>(i);
  return out;
}

void check_phi_order(std::size_t k) {
  if (k > 9) throw ConfigError("phi: order k must be at most 9");
}

}  // namespace

DenseOperator::DenseOperator(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("dense operator must be square");
  if (entries_.rows() == 0 || static_cast<std::size_t>(entries_.rows()) > max_dimension) {
    throw DimensionError("dense operator dimension must be in [1, 32]");
  }
  if (!entries_.allFinite()) throw ConfigError("dense operator has non-finite entries");
}

DenseOperator DenseOperator::zero(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return DenseOperator(Eigen::MatrixXd::Zero(dim, dim));
}

DenseOperator DenseOperator::identity(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return DenseOperator(Eigen::MatrixXd::Identity(dim, dim));
}

DenseOperator matrix_exponential(const DenseOperator& m) { return DenseOperator(expm(m.matrix())); }

DenseOperator phi(std::size_t k, const DenseOperator& m) {
  check_phi_order(k);
  if (k == 0) return matrix_exponential(m);
  const Eigen::Index n = m.matrix().rows();
  const Eigen::Index blocks = static_cast<Eigen::Index>(k) + 1;
  Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(blocks * n, blocks * n);
  augmented.topLeftCorner(n, n) = m.matrix();
  for (Eigen::Index b = 0; b + 1 < blocks; ++b) {
    augmented.block(b * n, (b + 1) * n, n, n).setIdentity();
  }
  const Eigen::MatrixXd big = expm(augmented);
  return DenseOperator(big.topRightCorner(n, n));
}

double phi_recurrence_residual(std::size_t k, const DenseOperator& m) {
  check_phi_order(k + 1);
  const Eigen::Index n = m.matrix().rows();
  const Eigen::MatrixXd lhs = phi(k, m).matrix();
  const Eigen::MatrixXd rhs = Eigen::MatrixXd::Identity(n, n) / factorial(k) +
                              m.matrix() * phi(k + 1, m).matrix();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

ScalarOdeDescriptor unperturbed_decay_descriptor() {
  return {"decay (R = 0)",
          [](double f) { return -f; },
          [](double) { return 0.0; },
          [](double t, double y) { return y * std::exp(-t); },
          [](double t, double) { return std::exp(-t); },
          0.5,
          1e-10};
}

ScalarOdeDescriptor logistic_descriptor() {
  return {"logistic (G = -f, R = f^2)",
          [](double f) { return -f; },
          [](double f) { return f * f; },
          [](double t, double y) { return y * std::exp(-t); },
          [](double t, double) { return std::exp(-t); },
          0.5,
          1e-8};
}

ScalarOdeDescriptor linear_forced_descriptor() {
  constexpr double lambda = -0.7;
  constexpr double forcing = 0.3;
  return {"linear (G = -0.7 f, R = 0.3)",
          [](double f) { return lambda * f; },
          [](double) { return forcing; },
          [](double t, double y) { return y * std::exp(lambda * t); },
          [](double t, double) { return std::exp(lambda * t); },
          1.0,
          1e-9};
}

std::vector<ScalarOdeDescriptor> shipped_descriptors() {
  return {unperturbed_decay_descriptor(), logistic_descriptor(), linear_forced_descriptor()};
}

double solve_perturbed(const ScalarOdeDescriptor& problem, double t) {
  namespace odeint = boost::numeric::odeint;
  if (!(t >= 0.0) || t > 5.0) throw ConfigError("groebner-alekseev: t must lie in [0, 5]");
  if (t == 0.0) return problem.f0;
  using State = double;
  auto rhs = [&problem](const State& f, State& dfdt, double) {
    dfdt = problem.G(f) + problem.R(f);
  };
  State f = problem.f0;
  auto stepper = odeint::make_controlled(1e-13, 1e-13,
                                         odeint::runge_kutta_dopri5<State, double, State, double,
                                                                    odeint::vector_space_algebra>());
  odeint::integrate_adaptive(stepper, rhs, f, 0.0, t, 1e-3);
  if (!std::isfinite(f)) throw AccuracyError("groebner-alekseev: direct integration diverged");
  return f;
}

GroebnerAlekseevCheck groebner_alekseev_check(const ScalarOdeDescriptor& problem, double t) {
  const double direct = solve_perturbed(problem, t);
  auto integrand = [&](double s) {
    const double fs = solve_perturbed(problem, s);
    return problem.flow_derivative(t - s, fs) * problem.R(fs);
  };
  double error_estimate = 0.0;
  const double integral = t == 0.0 ? 0.0
                                   : boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                                         integrand, 0.0, t, 15, 1e-13, &error_estimate);
  if (!(error_estimate <= 1e-10 * std::max(1.0, std::abs(integral)))) {
    throw AccuracyError("groebner-alekseev: quadrature did not converge for " + problem.name);
  }
  const double representation = problem.flow(t, problem.f0) + integral;
  return {direct, representation, std::abs(direct - representation)};
}

double groebner_alekseev_residual(const ScalarOdeDescriptor& problem, double t) {
  return groebner_alekseev_check(problem, t).residual;
}

OrderFit observed_order(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw DomainError("observed_order: need at least two points");
  for (const auto& [tau, err] : points) {
    if (!(tau > 0.0) || !(err > 0.0) || !std::isfinite(tau) || !std::isfinite(err)) {
      throw DomainError("observed_order: tau and error must be positive and finite");
    }
  }
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (points[a].first == points[b].first) {
        throw DomainError("observed_order: step sizes must be distinct");
      }
    }
  }

  const double count = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [tau, err] : points) {
    sx += std::log(tau);
    sy += std::log(err);
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [tau, err] : points) {
    const double dx = std::log(tau) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t k = 1; k < points.size(); ++k) {
    fit.pairwise_orders.push_back(std::log(points[k].second / points[k - 1].second) /
                                  std::log(points[k].first / points[k - 1].first));
  }
  fit.points = std::move(points);
  return fit;
}

}  // namespace vlasov::analysis
