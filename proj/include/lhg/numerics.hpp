#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "lhg/errors.hpp"

namespace lhg {

// Step sizes and thresholds used by every finite-difference and quadrature
// path.  All values must be strictly positive; fd_bound() is the acceptance
// band for identities checked through finite differences.
struct ToleranceConfig {
  double exact_tol = 1e-12;  // algebraic (exact-path) identities
  double fd_tol = 1e-6;      // floor for finite-difference identities
  double fd_step = 1e-5;     // first-order central differences
  double ode_step = std::numbers::pi / 256.0;  // target RK4 step (2pi/512)
  double singular_window = 1e-3;  // guard radius (radians) around tan poles
  double curvature_step = 2e-4;   // intrinsic curvature stencils
  double outer_step = 1e-3;   // derivatives of fields that are themselves FD results
  double lambda_step = 2e-6;  // curvature-function ODE residual sampling
  double null_tol = 1e-10;    // |<W,W>| below this marks a degenerate tangent plane
  double fd_cal = 25.0;       // C in max(fd_tol, C*h^2), calibrated on the flat plane

  double fd_bound() const { return std::max(fd_tol, fd_cal * fd_step * fd_step); }
  void validate() const;  // throws InvalidSpec on non-positive entries
};

template <class F>
double central_diff(F&& f, double x, double h) {
  const double a = f(x + h);
  const double b = f(x - h);
  if (!std::isfinite(a) || !std::isfinite(b))
    throw NonFiniteValue("central_diff: non-finite sample");
  return (a - b) / (2.0 * h);
}

// Piecewise cubic Hermite interpolant through (x_i, y_i) with slopes dy_i.
// Nodes must be strictly increasing; evaluation slightly outside the node
// range extrapolates with the boundary cubic.
class SampledCurve {
 public:
  SampledCurve() = default;
  SampledCurve(std::vector<double> x, std::vector<double> y, std::vector<double> dy);

  double value(double x) const;
  double deriv(double x) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }
  const std::vector<double>& dys() const { return d_; }

 private:
  std::size_t cell(double x) const;
  std::vector<double> x_, y_, d_;
};

template <std::size_t N>
struct OdeSolution {
  std::vector<double> x;
  std::vector<std::array<double, N>> y;
  std::vector<std::array<double, N>> dy;  // right-hand side at the nodes
};

// Classic fixed-step RK4 over [x0, x1] with n steps, storing every node.
template <std::size_t N, class F>
OdeSolution<N> rk4_solve(F&& f, std::array<double, N> y0, double x0, double x1,
                         std::size_t n) {
  if (!(x1 > x0) || n == 0) throw InvalidSpec("rk4_solve: empty range");
  const double h = (x1 - x0) / static_cast<double>(n);
  OdeSolution<N> out;
  out.x.resize(n + 1);
  out.y.resize(n + 1);
  out.dy.resize(n + 1);

  auto check = [](const std::array<double, N>& a) {
    for (double v : a)
      if (!std::isfinite(v)) throw NonFiniteValue("rk4_solve: non-finite state");
  };

  std::array<double, N> y = y0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = x0 + h * static_cast<double>(i);
    out.x[i] = x;
    out.y[i] = y;
    out.dy[i] = f(x, y);
    check(out.dy[i]);
    if (i == n) break;

    std::array<double, N> k1 = out.dy[i], t{};
    for (std::size_t j = 0; j < N; ++j) t[j] = y[j] + 0.5 * h * k1[j];
    std::array<double, N> k2 = f(x + 0.5 * h, t);
    for (std::size_t j = 0; j < N; ++j) t[j] = y[j] + 0.5 * h * k2[j];
    std::array<double, N> k3 = f(x + 0.5 * h, t);
    for (std::size_t j = 0; j < N; ++j) t[j] = y[j] + h * k3[j];
    std::array<double, N> k4 = f(x + h, t);
    for (std::size_t j = 0; j < N; ++j)
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    check(y);
  }
  return out;
}

// Cumulative 4th-order quadrature of fp over [x0, x1]: y' = fp(x), y(x0) = y0.
SampledCurve rk4_integrate(const std::function<double(double)>& fp, double y0,
                           double x0, double x1, std::size_t n);

struct Stats {
  double mean = 0, stdev = 0, min = 0, max = 0;
  std::size_t n = 0;
};
Stats stats(const std::vector<double>& v);

std::optional<std::array<double, 2>> solve2x2(
    const std::array<std::array<double, 2>, 2>& m, const std::array<double, 2>& r);
std::optional<std::array<double, 3>> solve3x3(
    const std::array<std::array<double, 3>, 3>& m, const std::array<double, 3>& r);

}  // namespace lhg
