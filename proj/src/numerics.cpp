#include "lhg/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace lhg {

void ToleranceConfig::validate() const {
  const double all[] = {exact_tol, fd_tol,     fd_step,     ode_step,
                        singular_window, curvature_step, outer_step,
                        lambda_step,     null_tol,       fd_cal};
  for (double v : all)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidSpec("ToleranceConfig: entries must be positive and finite");
}

SampledCurve::SampledCurve(std::vector<double> x, std::vector<double> y,
                           std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(dy)) {
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != d_.size())
    throw InvalidSpec("SampledCurve: need >= 2 nodes with values and slopes");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw InvalidSpec("SampledCurve: nodes must be strictly increasing");
}

std::size_t SampledCurve::cell(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double SampledCurve::value(double x) const {
  const std::size_t i = cell(x);
  const double w = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / w;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * w * d_[i] + h01 * y_[i + 1] + h11 * w * d_[i + 1];
}

double SampledCurve::deriv(double x) const {
  const std::size_t i = cell(x);
  const double w = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / w;
  const double t2 = t * t;
  const double g00 = 6 * t2 - 6 * t;
  const double g10 = 3 * t2 - 4 * t + 1;
  const double g01 = -g00;
  const double g11 = 3 * t2 - 2 * t;
  return (g00 * y_[i] + g01 * y_[i + 1]) / w + g10 * d_[i] + g11 * d_[i + 1];
}

SampledCurve rk4_integrate(const std::function<double(double)>& fp, double y0,
                           double x0, double x1, std::size_t n) {
  auto rhs = [&fp](double x, const std::array<double, 1>&) {
    return std::array<double, 1>{fp(x)};
  };
  OdeSolution<1> sol = rk4_solve<1>(rhs, {y0}, x0, x1, n);
  std::vector<double> y(sol.x.size()), dy(sol.x.size());
  for (std::size_t i = 0; i < sol.x.size(); ++i) {
    y[i] = sol.y[i][0];
    dy[i] = sol.dy[i][0];
  }
  return SampledCurve(std::move(sol.x), std::move(y), std::move(dy));
}

Stats stats(const std::vector<double>& v) {
  Stats s;
  s.n = v.size();
  if (v.empty()) return s;
  s.min = s.max = v[0];
  double acc = 0;
  for (double x : v) {
    acc += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = acc / static_cast<double>(v.size());
  double var = 0;
  for (double x : v) var += (x - s.mean) * (x - s.mean);
  s.stdev = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
  return s;
}

std::optional<std::array<double, 2>> solve2x2(
    const std::array<std::array<double, 2>, 2>& m, const std::array<double, 2>& r) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  double scale = 0;
  for (auto& row : m)
    for (double e : row) scale = std::max(scale, std::abs(e));
  if (scale == 0.0 || std::abs(det) <= 1e-14 * scale * scale) return std::nullopt;
  return std::array<double, 2>{(r[0] * m[1][1] - r[1] * m[0][1]) / det,
                               (r[1] * m[0][0] - r[0] * m[1][0]) / det};
}

std::optional<std::array<double, 3>> solve3x3(
    const std::array<std::array<double, 3>, 3>& m, const std::array<double, 3>& r) {
  std::array<std::array<double, 4>, 3> a{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
    a[i][3] = r[i];
  }
  double scale = 0;
  for (auto& row : m)
    for (double e : row) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) return std::nullopt;

  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int i = c + 1; i < 3; ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) <= 1e-14 * scale) return std::nullopt;
    std::swap(a[p], a[c]);
    for (int i = 0; i < 3; ++i) {
      if (i == c) continue;
      const double f = a[i][c] / a[c][c];
      for (int j = c; j < 4; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return std::array<double, 3>{a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

}  // namespace lhg
