#include "lhg/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace lhg {

std::array<CoordVector, 3> frame_at(const PointR3& p, Tau tau) {
  const double t = tau.v();
  return {CoordVector{1, 0, t * p.y}, CoordVector{0, 1, -t * p.x},
          CoordVector{0, 0, 1}};
}

Mat3 metric_coords(const PointR3& p, Tau tau) {
  const double t = tau.v();
  const double x = p.x, y = p.y;
  Mat3 g{};
  g[0][0] = 1.0 - t * t * y * y;
  g[1][1] = 1.0 - t * t * x * x;
  g[2][2] = -1.0;
  g[0][1] = g[1][0] = t * t * x * y;
  g[0][2] = g[2][0] = t * y;
  g[1][2] = g[2][1] = -t * x;
  return g;
}

FrameVector to_frame(const CoordVector& v, const PointR3& p, Tau tau) {
  const double t = tau.v();
  return {v.dx, v.dy, v.dz - t * (p.y * v.dx - p.x * v.dy)};
}

CoordVector to_coords(const FrameVector& v, const PointR3& p, Tau tau) {
  const double t = tau.v();
  return {v.c1, v.c2, v.c3 + t * (p.y * v.c1 - p.x * v.c2)};
}

FrameVector nabla_frame(int i, int j, Tau tau) {
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw std::out_of_range("nabla_frame: indices must lie in {1,2,3}");
  const double t = tau.v();
  // nabla_{E1}E2 = -tau E3, nabla_{E2}E1 = tau E3,
  // nabla_{E1}E3 = nabla_{E3}E1 = -tau E2,
  // nabla_{E2}E3 = nabla_{E3}E2 = tau E1, diagonal terms vanish.
  if (i == 1 && j == 2) return {0, 0, -t};
  if (i == 2 && j == 1) return {0, 0, t};
  if ((i == 1 && j == 3) || (i == 3 && j == 1)) return {0, -t, 0};
  if ((i == 2 && j == 3) || (i == 3 && j == 2)) return {t, 0, 0};
  return {0, 0, 0};
}

namespace {

// connection term sum_{i,j} x_i y_j nabla_{E_i} E_j for constant y components
FrameVector connection_part(const FrameVector& x, const FrameVector& y, Tau tau) {
  FrameVector acc{};
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const double w = x[i - 1] * y[j - 1];
      if (w != 0.0) acc = acc + w * nabla_frame(i, j, tau);
    }
  return acc;
}

void check_finite(const FrameVector& v, const char* who) {
  if (!std::isfinite(v.c1) || !std::isfinite(v.c2) || !std::isfinite(v.c3))
    throw NonFiniteValue(std::string(who) + ": non-finite components");
}

}  // namespace

FrameVector nabla_field(const VectorField& x, const VectorField& y,
                        const PointR3& p, Tau tau, double h) {
  if (!(h > 0)) throw InvalidSpec("nabla_field: step must be positive");
  const FrameVector xp = x(p);
  const FrameVector yp = y(p);
  check_finite(xp, "nabla_field X");
  check_finite(yp, "nabla_field Y");

  const auto frame = frame_at(p, tau);
  FrameVector deriv{};
  for (int k = 0; k < 3; ++k) {
    const double w = xp[k];
    if (w == 0.0) continue;
    const CoordVector d = frame[k];
    const PointR3 pp{p.x + h * d.dx, p.y + h * d.dy, p.z + h * d.dz};
    const PointR3 pm{p.x - h * d.dx, p.y - h * d.dy, p.z - h * d.dz};
    const FrameVector a = y(pp), b = y(pm);
    check_finite(a, "nabla_field Y");
    check_finite(b, "nabla_field Y");
    deriv = deriv + (w / (2.0 * h)) * (a - b);
  }
  return deriv + connection_part(xp, yp, tau);
}

FrameVector killing_residual(const FrameVector& x, const PointR3&, Tau tau) {
  // E3 has constant frame components, so nabla_X E3 is pure connection term
  const FrameVector e3{0, 0, 1};
  return connection_part(x, e3, tau) - tau.v() * frame_cross(x, e3);
}

namespace {

struct TableEntry {
  int basis;     // 0 = zero vector, else 1..3
  double scale;  // multiple of tau^2
};

// R(E_i, E_j)E_k, nonzero entries only; antisymmetric in (i, j)
constexpr TableEntry kCurvature[3][3][3] = {
    // i = 1
    {{{0, 0}, {0, 0}, {0, 0}},
     {{2, -3.0}, {1, 3.0}, {0, 0}},
     {{3, 1.0}, {0, 0}, {1, 1.0}}},
    // i = 2
    {{{2, 3.0}, {1, -3.0}, {0, 0}},
     {{0, 0}, {0, 0}, {0, 0}},
     {{0, 0}, {3, 1.0}, {2, 1.0}}},
    // i = 3
    {{{3, -1.0}, {0, 0}, {1, -1.0}},
     {{0, 0}, {3, -1.0}, {2, -1.0}},
     {{0, 0}, {0, 0}, {0, 0}}},
};

FrameVector basis_vector(int i) {
  return {i == 1 ? 1.0 : 0.0, i == 2 ? 1.0 : 0.0, i == 3 ? 1.0 : 0.0};
}

}  // namespace

FrameVector riemann_table(const FrameVector& x, const FrameVector& y,
                          const FrameVector& z, Tau tau) {
  const double t2 = tau.v() * tau.v();
  FrameVector acc{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double xy = x[i] * y[j];
      if (xy == 0.0) continue;
      for (int k = 0; k < 3; ++k) {
        const TableEntry& e = kCurvature[i][j][k];
        if (e.basis == 0) continue;
        const double w = xy * z[k] * e.scale * t2;
        if (w != 0.0) acc = acc + w * basis_vector(e.basis);
      }
    }
  return acc;
}

FrameVector riemann_formula(const FrameVector& x, const FrameVector& y,
                            const FrameVector& z, Tau tau) {
  const double t2 = tau.v() * tau.v();
  const FrameVector e3{0, 0, 1};
  const double yz = frame_inner(y, z), xz = frame_inner(x, z);
  const double y3 = frame_inner(y, e3), x3 = frame_inner(x, e3);
  const double z3 = frame_inner(z, e3);
  FrameVector r = 3.0 * t2 * (yz * x - xz * y);
  r = r + 4.0 * t2 * (y3 * z3 * x - x3 * z3 * y);
  r = r + 4.0 * t2 * ((yz * x3 - xz * y3) * e3);
  return r;
}

}  // namespace lhg
