#include "vlasov/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "vlasov/errors.hpp"

namespace vlasov {

namespace {

void check_input(std::span<const double> values, double h) {
  if (values.size() < 4) throw ConfigError("interpolation: need at least 4 samples");
  if (!(h > 0.0)) throw ConfigError("interpolation: grid spacing must be positive");
}

// Uniform cubic B-spline coefficients c with (c[j-1] + 4 c[j] + c[j+1]) / 6 = f[j],
// indices taken modulo n. Thomas algorithm plus a Sherman-Morrison correction
// for the two corner entries.
std::vector<double> periodic_bspline_coefficients(std::span<const double> f) {
  const std::size_t n = f.size();
  // A = T + u w^T with u = (gamma, 0, ..., 0, 1/6), w = (1, 0, ..., 0, 1/(6 gamma)).
  const double diag = 4.0 / 6.0;
  const double off = 1.0 / 6.0;
  const double gamma = -diag;

  auto solve_tridiagonal = [&](std::span<const double> rhs, std::vector<double>& out) {
    std::vector<double> c_prime(n);
    out.assign(n, 0.0);
    double b0 = diag - gamma;
    c_prime[0] = off / b0;
    out[0] = rhs[0] / b0;
    for (std::size_t j = 1; j < n; ++j) {
      double b = diag;
      if (j == n - 1) b = diag - off * off / gamma;
      const double m = b - off * c_prime[j - 1];
      c_prime[j] = off / m;
      out[j] = (rhs[j] - off * out[j - 1]) / m;
    }
    for (std::size_t j = n - 1; j-- > 0;) out[j] -= c_prime[j] * out[j + 1];
  };

  std::vector<double> y;
  solve_tridiagonal(f, y);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = off;
  std::vector<double> z;
  solve_tridiagonal(u, z);
  const double w_last = off / gamma;
  const double factor = (y[0] + w_last * y[n - 1]) / (1.0 + z[0] + w_last * z[n - 1]);
  for (std::size_t j = 0; j < n; ++j) y[j] -= factor * z[j];
  return y;
}

// Cubic B-spline basis weights for a point at fractional offset t in [0, 1)
// past node j: coefficients c[j-1], c[j], c[j+1], c[j+2].
struct BsplineWeights {
  double w[4];
};

BsplineWeights bspline_weights(double t) {
  const double s = 1.0 - t;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {{s * s * s / 6.0, (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0,
           (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0, t3 / 6.0}};
}

// Second derivatives of the natural cubic spline through f on a uniform grid.
std::vector<double> natural_spline_moments(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> m(n, 0.0);
  const std::size_t inner = n - 2;
  std::vector<double> c_prime(inner), d(inner);
  const double scale = 6.0 / (h * h);
  for (std::size_t k = 0; k < inner; ++k) {
    const std::size_t j = k + 1;
    const double rhs = scale * (f[j - 1] - 2.0 * f[j] + f[j + 1]);
    const double denom = k == 0 ? 4.0 : 4.0 - c_prime[k - 1];
    c_prime[k] = 1.0 / denom;
    d[k] = (rhs - (k == 0 ? 0.0 : d[k - 1])) / denom;
  }
  for (std::size_t k = inner; k-- > 0;) {
    m[k + 1] = d[k] - (k + 1 < inner ? c_prime[k] * m[k + 2] : 0.0);
  }
  return m;
}

}  // namespace

PeriodicSpline::PeriodicSpline(std::span<const double> values, double h)
    : h_(h), values_(values.begin(), values.end()),
      coefficients_(periodic_bspline_coefficients(values)) {
  check_input(values, h);
}

double PeriodicSpline::operator()(double x) const {
  const std::size_t n = values_.size();
  double cells = std::fmod(x / h_, static_cast<double>(n));
  if (cells < 0.0) cells += static_cast<double>(n);
  std::size_t j = static_cast<std::size_t>(std::floor(cells));
  double t = cells - static_cast<double>(j);
  if (j >= n) {
    j = 0;
    t = 0.0;
  }
  const BsplineWeights bw = bspline_weights(t);
  const auto& c = coefficients_;
  return bw.w[0] * c[(j + n - 1) % n] + bw.w[1] * c[j] + bw.w[2] * c[(j + 1) % n] +
         bw.w[3] * c[(j + 2) % n];
}

double PeriodicSpline::second_derivative(std::size_t node) const {
  const std::size_t n = values_.size();
  const auto& c = coefficients_;
  return (c[(node + n - 1) % n] - 2.0 * c[node] + c[(node + 1) % n]) / (h_ * h_);
}

double PeriodicSpline::cell_integral(std::size_t node) const {
  const std::size_t next = (node + 1) % values_.size();
  return 0.5 * h_ * (values_[node] + values_[next]) -
         h_ * h_ * h_ / 24.0 * (second_derivative(node) + second_derivative(next));
}

InterpolationScheme parse_interpolation(std::string_view name) {
  if (name == "linear") return InterpolationScheme::linear;
  if (name == "cubic-spline" || name == "cubic_spline" || name == "cubic") {
    return InterpolationScheme::cubic_spline;
  }
  throw ConfigError("unknown interpolation scheme '" + std::string(name) + "'");
}

std::string_view to_string(InterpolationScheme scheme) {
  return scheme == InterpolationScheme::linear ? "linear" : "cubic-spline";
}

std::vector<double> shift_periodic(std::span<const double> values, double delta, double h,
                                   InterpolationScheme scheme) {
  check_input(values, h);
  if (!std::isfinite(delta)) throw ConfigError("interpolation: shift must be finite");
  const std::size_t n = values.size();
  const double nd = static_cast<double>(n);

  // Departure point of node i is (i - delta/h); with delta/h = k + theta the
  // point lies at fractional offset t = 1 - theta past node i - k - 1.
  double cells = std::fmod(delta / h, nd);
  if (cells < 0.0) cells += nd;
  double whole = std::floor(cells);
  double theta = cells - whole;
  std::size_t base_shift;  // departure = (i - base_shift) + t, modulo n
  double t;
  if (theta == 0.0) {
    base_shift = static_cast<std::size_t>(whole) % n;
    t = 0.0;
  } else {
    base_shift = (static_cast<std::size_t>(whole) + 1) % n;
    t = 1.0 - theta;
  }
  auto wrap = [n](std::size_t i, std::size_t back) { return (i + n - back) % n; };

  std::vector<double> out(n);
  if (scheme == InterpolationScheme::linear) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = wrap(i, base_shift);
      out[i] = t == 0.0 ? values[j] : (1.0 - t) * values[j] + t * values[(j + 1) % n];
    }
    return out;
  }

  if (t == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = values[wrap(i, base_shift)];
    return out;
  }
  const std::vector<double> c = periodic_bspline_coefficients(values);
  const BsplineWeights bw = bspline_weights(t);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = wrap(i, base_shift);
    out[i] = bw.w[0] * c[(j + n - 1) % n] + bw.w[1] * c[j] + bw.w[2] * c[(j + 1) % n] +
             bw.w[3] * c[(j + 2) % n];
  }
  return out;
}

std::vector<double> shift_bounded(std::span<const double> values, double delta, double h,
                                  InterpolationScheme scheme) {
  check_input(values, h);
  if (!std::isfinite(delta)) throw ConfigError("interpolation: shift must be finite");
  const std::size_t n = values.size();
  std::vector<double> out(n, 0.0);
  if (delta == 0.0) {
    out.assign(values.begin(), values.end());
    return out;
  }
  const double cells = delta / h;
  if (std::abs(cells) > static_cast<double>(n + 1)) return out;

  // Interpolate the zero-extended data: pad far enough that every departure
  // point lies inside the padded grid.
  const std::size_t pad = static_cast<std::size_t>(std::ceil(std::abs(cells))) + 4;
  std::vector<double> padded(n + 2 * pad, 0.0);
  std::copy(values.begin(), values.end(), padded.begin() + static_cast<std::ptrdiff_t>(pad));
  std::vector<double> moments;
  if (scheme == InterpolationScheme::cubic_spline) moments = natural_spline_moments(padded, h);

  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i + pad) - cells;  // departure in padded cell units
    std::size_t j = static_cast<std::size_t>(std::floor(s));
    const double t = s - static_cast<double>(j);
    if (t == 0.0) {
      out[i] = padded[j];
      continue;
    }
    const double a = 1.0 - t;
    double value = a * padded[j] + t * padded[j + 1];
    if (scheme == InterpolationScheme::cubic_spline) {
      value += h * h / 6.0 *
               ((a * a * a - a) * moments[j] + (t * t * t - t) * moments[j + 1]);
    }
    out[i] = value;
  }
  return out;
}

}  // namespace vlasov
