#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vlasov::analysis {

// Small dense square matrix (n <= 32) standing in for a semigroup generator.
class DenseOperator {
 public:
  static constexpr std::size_t max_dimension = 32;

  explicit DenseOperator(Eigen::MatrixXd entries);
  static DenseOperator zero(std::size_t n);
  static DenseOperator identity(std::size_t n);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  double operator()(std::size_t r, std::size_t c) const {
    return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

 private:
  Eigen::MatrixXd entries_;
};

// Scaling and squaring with a degree-13 Pade approximant.
DenseOperator matrix_exponential(const DenseOperator& m);

// phi_0 = exp, phi_k(M) = int_0^1 e^{(1-s)M} s^{k-1}/(k-1)! ds, read off the
// corner block of the exponential of a block-bidiagonal augmented matrix.
DenseOperator phi(std::size_t k, const DenseOperator& m);

// max |phi_k(M) - I/k! - M phi_{k+1}(M)| over all entries.
double phi_recurrence_residual(std::size_t k, const DenseOperator& m);

// f' = G(f) + R(f), f(0) = f0, where the unperturbed flow g' = G(g) is known in
// closed form together with its derivative with respect to the initial value.
struct ScalarOdeDescriptor {
  std::string name;
  std::function<double(double)> G;
  std::function<double(double)> R;
  std::function<double(double, double)> flow;             // E_G(t, y)
  std::function<double(double, double)> flow_derivative;  // d/dy E_G(t, y)
  double f0;
  double residual_tolerance;  // expected bound on the identity residual
};

ScalarOdeDescriptor unperturbed_decay_descriptor();  // G = -f, R = 0, f0 = 1/2
ScalarOdeDescriptor logistic_descriptor();           // G = -f, R = f^2, f0 = 1/2
ScalarOdeDescriptor linear_forced_descriptor();      // G = -0.7 f, R = 0.3, f0 = 1
std::vector<ScalarOdeDescriptor> shipped_descriptors();

// Solution of f' = G(f) + R(f) at time t by an adaptive Dormand-Prince
// integrator with 1e-13 tolerances.
double solve_perturbed(const ScalarOdeDescriptor& problem, double t);

struct GroebnerAlekseevCheck {
  double direct;         // f(t) from direct integration
  double representation;  // E_G(t, f0) + int_0^t d2E_G(t-s, f(s)) R(f(s)) ds
  double residual;        // |direct - representation|
};

// Both sides of the nonlinear variation-of-constants formula. Throws
// AccuracyError if the adaptive quadrature does not converge.
GroebnerAlekseevCheck groebner_alekseev_check(const ScalarOdeDescriptor& problem, double t);
double groebner_alekseev_residual(const ScalarOdeDescriptor& problem, double t);

struct OrderFit {
  std::vector<std::pair<double, double>> points;  // (tau, error)
  double slope;
  double intercept;                    // log(error) at log(tau) = 0
  std::vector<double> pairwise_orders;  // between consecutive points
};

// Least-squares line through (log tau, log error).
OrderFit observed_order(std::vector<std::pair<double, double>> points);

}  // namespace vlasov::analysis
