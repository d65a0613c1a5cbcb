#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vlasov {

// Periodic x-interval [0, L) sampled at cell left edges, truncated velocity
// interval [-vmax, vmax] sampled including both endpoints.
class GridSpec {
 public:
  GridSpec(double L, double vmax, std::size_t nx, std::size_t nv);

  double L() const noexcept { return L_; }
  double vmax() const noexcept { return vmax_; }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t nv() const noexcept { return nv_; }

  double dx() const noexcept { return L_ / static_cast<double>(nx_); }
  double dv() const noexcept { return 2.0 * vmax_ / static_cast<double>(nv_ - 1); }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx(); }
  // Written so that v(nv-1-j) == -v(j) exactly and the end nodes are +-vmax.
  double v(std::size_t j) const noexcept {
    const double m = static_cast<double>(nv_ - 1);
    return vmax_ * (2.0 * static_cast<double>(j) - m) / m;
  }

  // Trapezoidal velocity weight (1/2 at the two end rows, 1 elsewhere).
  double v_weight(std::size_t j) const noexcept {
    return (j == 0 || j + 1 == nv_) ? 0.5 : 1.0;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double L_;
  double vmax_;
  std::size_t nx_;
  std::size_t nv_;
};

// f(x_i, v_j) stored row-major with x as the slow index.
class DistributionField {
 public:
  explicit DistributionField(const GridSpec& spec);  // zero-filled
  DistributionField(const GridSpec& spec, std::vector<double> values);

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(values_).subspan(i * spec_.nv(), spec_.nv());
  }
  std::span<double> row(std::size_t i) noexcept {
    return std::span<double>(values_).subspan(i * spec_.nv(), spec_.nv());
  }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * spec_.nv() + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return values_[i * spec_.nv() + j];
  }

  bool all_finite() const noexcept;

  friend bool operator==(const DistributionField&, const DistributionField&) = default;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

class ChargeDensity {
 public:
  ChargeDensity(const GridSpec& spec, std::vector<double> values);

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

// f0(x, v) = exp(-v^2/2) (1 + alpha cos(x/2)) / sqrt(2 pi).
// Requires L/2 to be a multiple of 2 pi and a unit-mean density.
DistributionField landau_initial_condition(const GridSpec& spec, double alpha);

// rho(x_i) = dv * sum_j w_j f(x_i, v_j), trapezoidal weights in v.
ChargeDensity charge_density(const DistributionField& f);

// dx * sum_i rho(x_i), summed in ascending (i, j) order.
double mass(const DistributionField& f);

// dx * dv * sum |f_ij - g_ij| with uniform weights.
double l1_distance(const DistributionField& f, const DistributionField& g);

// dx * dv * sum |f_ij|.
double l1_norm(const DistributionField& f);

// Trapezoid-weighted mass carried by the rows v_0 and v_{nv-1}.
double boundary_mass(const DistributionField& f);

}  // namespace vlasov
