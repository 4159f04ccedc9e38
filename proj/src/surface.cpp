#include "lhg/surface.hpp"

#include <cmath>
#include <string>

namespace lhg {

namespace {

CoordVector cd(const CoordVector& a, const CoordVector& b, double s) {
  return {s * (a.dx - b.dx), s * (a.dy - b.dy), s * (a.dz - b.dz)};
}

void check_finite(const FrameVector& v, const char* who) {
  if (!std::isfinite(v.c1) || !std::isfinite(v.c2) || !std::isfinite(v.c3))
    throw NonFiniteValue(std::string(who) + ": non-finite value");
}

}  // namespace

CoordVector Immersion::d_u(double u, double v) const {
  const PointR3 a = position(u + h_, v), b = position(u - h_, v);
  return {(a.x - b.x) / (2 * h_), (a.y - b.y) / (2 * h_), (a.z - b.z) / (2 * h_)};
}

CoordVector Immersion::d_v(double u, double v) const {
  const PointR3 a = position(u, v + h_), b = position(u, v - h_);
  return {(a.x - b.x) / (2 * h_), (a.y - b.y) / (2 * h_), (a.z - b.z) / (2 * h_)};
}

CoordVector Immersion::d_uu(double u, double v) const {
  return cd(d_u(u + h_, v), d_u(u - h_, v), 1.0 / (2 * h_));
}

CoordVector Immersion::d_uv(double u, double v) const {
  return cd(d_u(u, v + h_), d_u(u, v - h_), 1.0 / (2 * h_));
}

CoordVector Immersion::d_vv(double u, double v) const {
  return cd(d_v(u, v + h_), d_v(u, v - h_), 1.0 / (2 * h_));
}

SurfaceFrame surface_frame(const Immersion& imm, double u, double v, int orient,
                           double null_tol) {
  if (orient != 1 && orient != -1)
    throw InvalidSpec("surface_frame: orient must be +1 or -1");
  SurfaceFrame f;
  f.p = imm.position(u, v);
  const Tau tau = imm.tau();
  f.fu = to_frame(imm.d_u(u, v), f.p, tau);
  f.fv = to_frame(imm.d_v(u, v), f.p, tau);
  check_finite(f.fu, "surface_frame");
  check_finite(f.fv, "surface_frame");

  const FrameVector w = frame_cross(f.fu, f.fv);
  f.w2 = frame_inner(w, w);
  if (!(std::abs(f.w2) >= null_tol))
    throw NullNormal("surface_frame: degenerate tangent plane, |<W,W>| = " +
                     std::to_string(std::abs(f.w2)));

  const double inv = orient / std::sqrt(std::abs(f.w2));
  f.normal = inv * w;
  f.eps = f.w2 > 0 ? +1 : -1;
  f.nu = f.eps * frame_inner(f.normal, FrameVector{0, 0, 1});
  f.t = FrameVector{0, 0, 1} - f.nu * f.normal;
  f.jt = frame_cross(f.normal, f.t);
  return f;
}

SurfaceFrame surface_frame_oriented(const Immersion& imm, double u, double v,
                                    int nu_sign, double null_tol) {
  SurfaceFrame f = surface_frame(imm, u, v, +1, null_tol);
  if (nu_sign * f.nu < 0) f = surface_frame(imm, u, v, -1, null_tol);
  return f;
}

CausalType causal_type(const SurfaceFrame& f) {
  const double det = frame_inner(f.fu, f.fu) * frame_inner(f.fv, f.fv) -
                     frame_inner(f.fu, f.fv) * frame_inner(f.fu, f.fv);
  const CausalType by_eps = f.eps < 0 ? CausalType::Spacelike : CausalType::Timelike;
  const CausalType by_det = det > 0 ? CausalType::Spacelike : CausalType::Timelike;
  if (by_eps != by_det)
    throw NullNormal("causal_type: normal sign and induced metric disagree");
  return by_eps;
}

std::array<double, 2> tangent_coefficients(const SurfaceFrame& f,
                                           const FrameVector& x) {
  const std::array<std::array<double, 2>, 2> g{
      {{frame_inner(f.fu, f.fu), frame_inner(f.fu, f.fv)},
       {frame_inner(f.fu, f.fv), frame_inner(f.fv, f.fv)}}};
  const std::array<double, 2> rhs{frame_inner(x, f.fu), frame_inner(x, f.fv)};
  auto sol = solve2x2(g, rhs);
  if (!sol) throw DegenerateMetric("tangent_coefficients: singular induced metric");
  return *sol;
}

FrameVector tangential_part(const SurfaceFrame& f, const FrameVector& v) {
  return v - (f.eps * frame_inner(v, f.normal)) * f.normal;
}

FrameVector nabla_along(const Immersion& imm, double u, double v,
                        const std::array<double, 2>& vel, const FrameVector& x,
                        const SurfaceField& field, double h) {
  if (!(h > 0)) throw InvalidSpec("nabla_along: step must be positive");
  const FrameVector q0 = field(u, v);
  const FrameVector qp = field(u + h * vel[0], v + h * vel[1]);
  const FrameVector qm = field(u - h * vel[0], v - h * vel[1]);
  check_finite(qp, "nabla_along");
  check_finite(qm, "nabla_along");
  FrameVector acc = (1.0 / (2.0 * h)) * (qp - qm);
  const Tau tau = imm.tau();
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const double w = x[i - 1] * q0[j - 1];
      if (w != 0.0) acc = acc + w * nabla_frame(i, j, tau);
    }
  return acc;
}

namespace {

// decompose a tangent vector in {T, JT} through the Gram system
std::array<double, 2> tj_coefficients(const SurfaceFrame& f, const FrameVector& x) {
  const double tt = frame_inner(f.t, f.t);
  const double tj = frame_inner(f.t, f.jt);
  const double jj = frame_inner(f.jt, f.jt);
  auto sol = solve2x2({{{tt, tj}, {tj, jj}}},
                      {frame_inner(x, f.t), frame_inner(x, f.jt)});
  if (!sol) throw SingularBasis("singular {T, JT} Gram system");
  return *sol;
}

SurfaceField normal_field(const Immersion& imm, int orient, double null_tol) {
  return [&imm, orient, null_tol](double uu, double vv) {
    return surface_frame(imm, uu, vv, orient, null_tol).normal;
  };
}

}  // namespace

ShapeData shape_operator(const Immersion& imm, double u, double v, int orient,
                         const ToleranceConfig& tol) {
  const SurfaceFrame f = surface_frame(imm, u, v, orient, tol.null_tol);
  const double tt = frame_inner(f.t, f.t);
  if (std::abs(tt) < 1e-10)
    throw SingularBasis("shape_operator: T is numerically zero (theta ~ 0)");

  const auto ct = tangent_coefficients(f, f.t);
  const auto cj = tangent_coefficients(f, f.jt);
  const SurfaceField nf = normal_field(imm, orient, tol.null_tol);

  ShapeData s;
  s.a_t = -nabla_along(imm, u, v, ct, f.t, nf, tol.fd_step);
  s.a_jt = -nabla_along(imm, u, v, cj, f.jt, nf, tol.fd_step);

  const auto col0 = tj_coefficients(f, s.a_t);
  const auto col1 = tj_coefficients(f, s.a_jt);
  s.a[0][0] = col0[0];
  s.a[1][0] = col0[1];
  s.a[0][1] = col1[0];
  s.a[1][1] = col1[1];
  s.lambda = s.a[1][1];
  s.det = s.a[0][0] * s.a[1][1] - s.a[0][1] * s.a[1][0];
  return s;
}

double gauss_curvature_extrinsic(double det_a, double nu, int eps, Tau tau) {
  const double t2 = tau.v() * tau.v();
  return eps * (det_a - 4.0 * t2 * nu * nu) - t2;
}

double gauss_curvature_extrinsic(const ShapeData& s, double nu, int eps, Tau tau) {
  return gauss_curvature_extrinsic(s.det, nu, eps, tau);
}

MetricField induced_metric(const Immersion& imm) {
  return [&imm](double u, double v) -> std::array<double, 3> {
    const PointR3 p = imm.position(u, v);
    const FrameVector fu = to_frame(imm.d_u(u, v), p, imm.tau());
    const FrameVector fv = to_frame(imm.d_v(u, v), p, imm.tau());
    return {frame_inner(fu, fu), frame_inner(fu, fv), frame_inner(fv, fv)};
  };
}

namespace {

// Christoffel symbols of a 2d metric at (u, v); gamma[k][i][j], symmetric in
// (i, j), coordinate order (u, v).
std::array<std::array<std::array<double, 2>, 2>, 2> christoffel(
    const MetricField& g, double u, double v, double h, double degen_tol) {
  const auto g0 = g(u, v);
  const auto gu_p = g(u + h, v), gu_m = g(u - h, v);
  const auto gv_p = g(u, v + h), gv_m = g(u, v - h);

  double scale = 0;
  for (double e : g0) scale = std::max(scale, std::abs(e));
  const double det = g0[0] * g0[2] - g0[1] * g0[1];
  if (!(scale > 0) || std::abs(det) <= degen_tol * scale * scale)
    throw DegenerateMetric("christoffel: induced metric not invertible");

  // inverse metric
  const double iuu = g0[2] / det, iuv = -g0[1] / det, ivv = g0[0] / det;
  const double inv[2][2] = {{iuu, iuv}, {iuv, ivv}};

  // dg[l][i][j] = d_l g_ij with symmetric storage g = (g11, g12, g22)
  auto expand = [](const std::array<double, 3>& m) {
    return std::array<std::array<double, 2>, 2>{{{m[0], m[1]}, {m[1], m[2]}}};
  };
  const auto du = expand({(gu_p[0] - gu_m[0]) / (2 * h), (gu_p[1] - gu_m[1]) / (2 * h),
                          (gu_p[2] - gu_m[2]) / (2 * h)});
  const auto dv = expand({(gv_p[0] - gv_m[0]) / (2 * h), (gv_p[1] - gv_m[1]) / (2 * h),
                          (gv_p[2] - gv_m[2]) / (2 * h)});
  const std::array<std::array<std::array<double, 2>, 2>, 2> dg{du, dv};

  std::array<std::array<std::array<double, 2>, 2>, 2> gamma{};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = 0;
        for (int l = 0; l < 2; ++l)
          acc += inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        gamma[k][i][j] = 0.5 * acc;
      }
  return gamma;
}

}  // namespace

double gauss_curvature_intrinsic(const MetricField& g, double u, double v,
                                 double h, double degen_tol) {
  if (!(h > 0)) throw InvalidSpec("gauss_curvature_intrinsic: bad step");
  const auto g0 = g(u, v);
  const double det = g0[0] * g0[2] - g0[1] * g0[1];
  double scale = 0;
  for (double e : g0) scale = std::max(scale, std::abs(e));
  if (!(scale > 0) || std::abs(det) <= degen_tol * scale * scale)
    throw DegenerateMetric("gauss_curvature_intrinsic: degenerate metric");

  const auto gc = christoffel(g, u, v, h, degen_tol);
  const auto gup = christoffel(g, u + h, v, h, degen_tol);
  const auto gum = christoffel(g, u - h, v, h, degen_tol);
  const auto gvp = christoffel(g, u, v + h, h, degen_tol);
  const auto gvm = christoffel(g, u, v - h, h, degen_tol);

  // R(d_u, d_v)d_v = C^m d_m
  double c[2];
  for (int m = 0; m < 2; ++m) {
    const double d_u_gamma = (gup[m][1][1] - gum[m][1][1]) / (2 * h);
    const double d_v_gamma = (gvp[m][0][1] - gvm[m][0][1]) / (2 * h);
    double quad = 0;
    for (int k = 0; k < 2; ++k)
      quad += gc[k][1][1] * gc[m][0][k] - gc[k][0][1] * gc[m][1][k];
    c[m] = d_u_gamma - d_v_gamma + quad;
  }
  // <R(d_u, d_v)d_v, d_u> / det
  const double r1212 = c[0] * g0[0] + c[1] * g0[1];
  return r1212 / det;
}

double gauss_curvature_intrinsic(const Immersion& imm, double u, double v,
                                 const ToleranceConfig& tol) {
  return gauss_curvature_intrinsic(induced_metric(imm), u, v, tol.curvature_step);
}

namespace {

struct FrameFields {
  SurfaceField normal, t, jt;
  std::function<double(double, double)> nu;
};

FrameFields frame_fields(const Immersion& imm, int orient, double null_tol) {
  auto at = [&imm, orient, null_tol](double uu, double vv) {
    return surface_frame(imm, uu, vv, orient, null_tol);
  };
  FrameFields ff;
  ff.normal = [at](double uu, double vv) { return at(uu, vv).normal; };
  ff.t = [at](double uu, double vv) { return at(uu, vv).t; };
  ff.jt = [at](double uu, double vv) { return at(uu, vv).jt; };
  ff.nu = [at](double uu, double vv) { return at(uu, vv).nu; };
  return ff;
}

}  // namespace

StructureResiduals structure_residuals(const Immersion& imm, double u, double v,
                                       int orient, const ToleranceConfig& tol) {
  const SurfaceFrame f = surface_frame(imm, u, v, orient, tol.null_tol);
  const FrameFields ff = frame_fields(imm, orient, tol.null_tol);
  const double tv = imm.tau().v();
  const double h = tol.fd_step;

  StructureResiduals worst;
  double worst1 = -1;
  for (int which = 0; which < 2; ++which) {
    const FrameVector x = which == 0 ? f.t : f.jt;
    const auto vel = tangent_coefficients(f, x);

    const FrameVector dt = nabla_along(imm, u, v, vel, x, ff.t, h);
    const FrameVector ax = -nabla_along(imm, u, v, vel, x, ff.normal, h);
    const FrameVector jx = frame_cross(f.normal, x);
    const FrameVector flow = ax - tv * jx;

    const FrameVector r1 = tangential_part(f, dt) - f.nu * flow;
    const double dnu = central_diff(
        [&](double s) { return ff.nu(u + s * vel[0], v + s * vel[1]); }, 0.0, h);
    const double r2 = dnu + f.eps * frame_inner(flow, f.t);

    if (residual_norm(r1) > worst1) {
      worst1 = residual_norm(r1);
      worst.r1 = r1;
    }
    worst.r2 = std::max(std::abs(r2), worst.r2);
  }
  return worst;
}

FrameVector bracket_t_jt(const Immersion& imm, double u, double v, int orient,
                         const ToleranceConfig& tol) {
  const SurfaceFrame f = surface_frame(imm, u, v, orient, tol.null_tol);
  const FrameFields ff = frame_fields(imm, orient, tol.null_tol);
  const auto ct = tangent_coefficients(f, f.t);
  const auto cj = tangent_coefficients(f, f.jt);
  const FrameVector a = nabla_along(imm, u, v, ct, f.t, ff.jt, tol.fd_step);
  const FrameVector b = nabla_along(imm, u, v, cj, f.jt, ff.t, tol.fd_step);
  return a - b;
}

FrameVector codazzi_residual(const Immersion& imm, double u, double v, int orient,
                             const ToleranceConfig& tol) {
  const SurfaceFrame f = surface_frame(imm, u, v, orient, tol.null_tol);
  const FrameFields ff = frame_fields(imm, orient, tol.null_tol);
  const double tv = imm.tau().v();
  const double h = tol.fd_step;

  // A(T) and A(JT) as fields over the chart
  auto shape_image = [&](double uu, double vv, bool of_t) {
    const SurfaceFrame g = surface_frame(imm, uu, vv, orient, tol.null_tol);
    const FrameVector x = of_t ? g.t : g.jt;
    const auto vel = tangent_coefficients(g, x);
    return -nabla_along(imm, uu, vv, vel, x, ff.normal, h);
  };
  const SurfaceField a_t_field = [&](double uu, double vv) {
    return shape_image(uu, vv, true);
  };
  const SurfaceField a_jt_field = [&](double uu, double vv) {
    return shape_image(uu, vv, false);
  };

  const auto ct = tangent_coefficients(f, f.t);
  const auto cj = tangent_coefficients(f, f.jt);
  const double hh = tol.outer_step;

  // Richardson extrapolation of the outer stencil: the images carry a tan-like
  // factor that steepens toward fold lines, where plain O(h^2) is too coarse.
  auto grad4 = [&](const std::array<double, 2>& vel, const FrameVector& x,
                   const SurfaceField& field) {
    const FrameVector lo = nabla_along(imm, u, v, vel, x, field, hh);
    const FrameVector hi = nabla_along(imm, u, v, vel, x, field, hh / 2);
    return (1.0 / 3.0) * (4.0 * hi - lo);
  };
  const FrameVector d1 = tangential_part(f, grad4(ct, f.t, a_jt_field));
  const FrameVector d2 = tangential_part(f, grad4(cj, f.jt, a_t_field));

  const FrameVector br = bracket_t_jt(imm, u, v, orient, tol);
  FrameVector a_br{};
  try {
    const auto bc = tj_coefficients(f, br);
    a_br = bc[0] * a_t_field(u, v) + bc[1] * a_jt_field(u, v);
  } catch (const SingularBasis&) {
    // T ~ 0 (totally geodesic E3-orthogonal patch): the bracket vanishes too
    if (residual_norm(br) > 1e-8) throw;
  }

  const double k = 4.0 * f.eps * f.nu * tv * tv;
  const FrameVector rhs_gap =
      k * (frame_inner(f.jt, f.t) * f.t - frame_inner(f.t, f.t) * f.jt);
  return d1 - d2 - a_br + rhs_gap;
}

}  // namespace lhg
