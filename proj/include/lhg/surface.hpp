#pragma once

#include <array>
#include <functional>

#include "lhg/ambient.hpp"
#include "lhg/numerics.hpp"

namespace lhg {

struct Domain {
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
};

// Parametrised surface patch in the ambient space.  position() must stay
// evaluable slightly outside the declared domain so difference stencils can
// cross the boundary.  Derivative defaults are central differences; override
// them when closed forms exist.
class Immersion {
 public:
  Immersion(Domain d, Tau tau, double fd_step = 1e-5)
      : dom_(d), tau_(tau), h_(fd_step) {
    if (!(fd_step > 0)) throw InvalidSpec("Immersion: fd_step must be positive");
  }
  virtual ~Immersion() = default;

  virtual PointR3 position(double u, double v) const = 0;

  virtual CoordVector d_u(double u, double v) const;
  virtual CoordVector d_v(double u, double v) const;
  virtual CoordVector d_uu(double u, double v) const;
  virtual CoordVector d_uv(double u, double v) const;
  virtual CoordVector d_vv(double u, double v) const;

  const Domain& domain() const { return dom_; }
  Tau tau() const { return tau_; }
  double step() const { return h_; }

 private:
  Domain dom_;
  Tau tau_;
  double h_;
};

// closure-backed immersion with finite-difference jets
class FnImmersion : public Immersion {
 public:
  FnImmersion(Domain d, Tau tau, std::function<PointR3(double, double)> f,
              double fd_step = 1e-5)
      : Immersion(d, tau, fd_step), f_(std::move(f)) {}
  PointR3 position(double u, double v) const override { return f_(u, v); }

 private:
  std::function<PointR3(double, double)> f_;
};

enum class CausalType { Spacelike, Timelike };

// Adapted data at one parameter point.  normal is unit with <N,N> = eps;
// nu = eps*<N,E3>, and E3 splits as T + nu*N with T tangent, JT = N x T.
struct SurfaceFrame {
  PointR3 p;
  FrameVector fu, fv;
  FrameVector normal;
  FrameVector t, jt;
  double nu = 0;
  int eps = 0;  // -1: spacelike surface, +1: timelike surface
  double w2 = 0;  // <W,W> for W = fu x fv, before normalisation
};

// orient in {+1,-1} picks the normal direction N = orient * W / |<W,W>|^(1/2).
// Throws NullNormal when |<W,W>| < null_tol.
SurfaceFrame surface_frame(const Immersion& imm, double u, double v,
                           int orient = +1, double null_tol = 1e-10);

// flips the orientation if needed so that sign(nu) == nu_sign
SurfaceFrame surface_frame_oriented(const Immersion& imm, double u, double v,
                                    int nu_sign, double null_tol = 1e-10);

// from eps, cross-checked against the sign of det of the induced metric
CausalType causal_type(const SurfaceFrame& f);

// Shape operator A = -nabla N in the basis {T, JT}; columns are images:
// A(T) = a[0][0] T + a[1][0] JT, A(JT) = a[0][1] T + a[1][1] JT.
struct ShapeData {
  std::array<std::array<double, 2>, 2> a{};
  double lambda = 0;  // a[1][1]
  double det = 0;
  FrameVector a_t, a_jt;  // raw images A(T), A(JT)
};

// Differentiates the unit normal field along surface curves with velocities
// T and JT.  Throws SingularBasis when T is numerically zero.
ShapeData shape_operator(const Immersion& imm, double u, double v, int orient,
                         const ToleranceConfig& tol = {});

// K = eps*(det A - 4 tau^2 nu^2) - tau^2
double gauss_curvature_extrinsic(const ShapeData& s, double nu, int eps, Tau tau);
double gauss_curvature_extrinsic(double det_a, double nu, int eps, Tau tau);

// induced metric (g11, g12, g22) as a field over the parameter domain
using MetricField = std::function<std::array<double, 3>(double, double)>;
MetricField induced_metric(const Immersion& imm);

// Intrinsic Gauss curvature of a 2d metric field of either signature:
// Christoffel symbols and their derivatives by central differences of step h,
// K = <R(d_u,d_v)d_v, d_u> / det(g).  Throws DegenerateMetric when det(g)
// vanishes (relatively) on the stencil.
double gauss_curvature_intrinsic(const MetricField& g, double u, double v,
                                 double h, double degen_tol = 1e-12);
double gauss_curvature_intrinsic(const Immersion& imm, double u, double v,
                                 const ToleranceConfig& tol = {});

// Residuals of the tangential and normal pieces of nabla E3 restricted to the
// surface, worst case over X in {T, JT}:
//   r1 = (nabla_X T)^tan - nu*(A(X) - tau J X)
//   r2 = X(nu) + eps*<A(X) - tau J X, T>
struct StructureResiduals {
  FrameVector r1;
  double r2 = 0;
};
StructureResiduals structure_residuals(const Immersion& imm, double u, double v,
                                       int orient, const ToleranceConfig& tol = {});

// nabla_T A(JT) - nabla_JT A(T) - A([T,JT]) + 4 eps nu tau^2 (<JT,T>T - <T,T>JT)
FrameVector codazzi_residual(const Immersion& imm, double u, double v, int orient,
                             const ToleranceConfig& tol = {});

// ---- helpers shared with the verification layer ----

// chart coefficients (xu, xv) with X = xu*Fu + xv*Fv
std::array<double, 2> tangent_coefficients(const SurfaceFrame& f,
                                           const FrameVector& x);

// V minus its normal component eps*<V,N>N
FrameVector tangential_part(const SurfaceFrame& f, const FrameVector& v);

using SurfaceField = std::function<FrameVector(double, double)>;

// Ambient covariant derivative of a surface vector field along the curve
// t -> (u + t*vel[0], v + t*vel[1]) whose velocity is x (frame components).
FrameVector nabla_along(const Immersion& imm, double u, double v,
                        const std::array<double, 2>& vel, const FrameVector& x,
                        const SurfaceField& field, double h);

// numerical Lie bracket [T, JT] at (u, v)
FrameVector bracket_t_jt(const Immersion& imm, double u, double v, int orient,
                         const ToleranceConfig& tol = {});

}  // namespace lhg
