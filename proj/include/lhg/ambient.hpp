#pragma once

#include <array>
#include <functional>

#include "lhg/errors.hpp"
#include "lhg/numerics.hpp"

// Geometry of R^3 with the left-invariant Lorentzian metric
//
//   g = dx^2 + dy^2 - (dz - tau*(y dx - x dy))^2,   tau != 0.
//
// All vector algebra runs in components of the global orthonormal frame
//
//   E1 = d/dx + tau*y d/dz,  E2 = d/dy - tau*x d/dz,  E3 = d/dz,
//
// which has signature (+, +, -): <U,V> = u1 v1 + u2 v2 - u3 v3.

namespace lhg {

class Tau {
 public:
  explicit Tau(double value) : v_(value) {
    if (!(value != 0.0) || !std::isfinite(value))
      throw InvalidSpec("tau must be finite and nonzero");
  }
  double v() const { return v_; }

 private:
  double v_;
};

struct PointR3 {
  double x = 0, y = 0, z = 0;
};

// components w.r.t. {E1, E2, E3}
struct FrameVector {
  double c1 = 0, c2 = 0, c3 = 0;
  double operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
};

// components w.r.t. the coordinate basis {d/dx, d/dy, d/dz}
struct CoordVector {
  double dx = 0, dy = 0, dz = 0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

inline FrameVector operator+(const FrameVector& a, const FrameVector& b) {
  return {a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
}
inline FrameVector operator-(const FrameVector& a, const FrameVector& b) {
  return {a.c1 - b.c1, a.c2 - b.c2, a.c3 - b.c3};
}
inline FrameVector operator-(const FrameVector& a) { return {-a.c1, -a.c2, -a.c3}; }
inline FrameVector operator*(double s, const FrameVector& a) {
  return {s * a.c1, s * a.c2, s * a.c3};
}

// signature (+,+,-) inner product
inline double frame_inner(const FrameVector& a, const FrameVector& b) {
  return a.c1 * b.c1 + a.c2 * b.c2 - a.c3 * b.c3;
}

// plain Euclidean size of the component triple; used to measure residuals
inline double residual_norm(const FrameVector& a) {
  return std::sqrt(a.c1 * a.c1 + a.c2 * a.c2 + a.c3 * a.c3);
}

// Lorentzian cross product fixed by
//   E1 x E2 = -E3,  E2 x E3 = E1,  E3 x E1 = E2.
inline FrameVector frame_cross(const FrameVector& u, const FrameVector& v) {
  return {u.c2 * v.c3 - u.c3 * v.c2,
          -(u.c1 * v.c3 - u.c3 * v.c1),
          -(u.c1 * v.c2 - u.c2 * v.c1)};
}

// frame vectors in coordinate components at p
std::array<CoordVector, 3> frame_at(const PointR3& p, Tau tau);

// coordinate matrix of g at p; det = -1 everywhere
Mat3 metric_coords(const PointR3& p, Tau tau);

FrameVector to_frame(const CoordVector& v, const PointR3& p, Tau tau);
CoordVector to_coords(const FrameVector& v, const PointR3& p, Tau tau);

// Levi-Civita connection on frame fields: nabla_{E_i} E_j, indices in {1,2,3}
FrameVector nabla_frame(int i, int j, Tau tau);

using VectorField = std::function<FrameVector(const PointR3&)>;

// nabla_X Y at p by the Leibniz rule: component derivatives are central
// differences of step h along the frame directions through p.
FrameVector nabla_field(const VectorField& x, const VectorField& y,
                        const PointR3& p, Tau tau, double h);

// nabla_X E3 - tau * (X x E3); identically zero because E3 is Killing
FrameVector killing_residual(const FrameVector& x, const PointR3& p, Tau tau);

// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
// extended trilinearly from the constant component table.
FrameVector riemann_table(const FrameVector& x, const FrameVector& y,
                          const FrameVector& z, Tau tau);

// same tensor through the closed expression
//   R(X,Y)Z = 3 tau^2 (<Y,Z>X - <X,Z>Y)
//           + 4 tau^2 (<Y,E3><Z,E3>X - <X,E3><Z,E3>Y
//                      + <Y,Z><X,E3>E3 - <X,Z><Y,E3>E3)
FrameVector riemann_formula(const FrameVector& x, const FrameVector& y,
                            const FrameVector& z, Tau tau);

}  // namespace lhg
