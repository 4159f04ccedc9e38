#include "lhg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace lhg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// <W,W> for W = Fu x Fv without building the full adapted frame (and without
// the NullNormal throw, so it can probe fold lines directly)
double w2_at(const Immersion& imm, double u, double v) {
  const PointR3 p = imm.position(u, v);
  const FrameVector fu = to_frame(imm.d_u(u, v), p, imm.tau());
  const FrameVector fv = to_frame(imm.d_v(u, v), p, imm.tau());
  const FrameVector w = frame_cross(fu, fv);
  return frame_inner(w, w);
}

// orientation argument that makes sign(nu) == nu_sign at (u, v)
int orient_toward(const Immersion& imm, double u, double v, int nu_sign) {
  const SurfaceFrame f = surface_frame(imm, u, v, +1);
  return (nu_sign >= 0) == (f.nu >= 0) ? +1 : -1;
}

}  // namespace

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = schema;
  j["family"] = family;
  j["theta"] = theta;
  j["tau"] = tau;
  j["c"] = c;
  j["u_range"] = u_range;
  j["v_range"] = v_range;
  j["grid_u"] = grid_u;
  j["grid_v"] = grid_v;
  j["nu_target"] = nu_target;
  j["k_target"] = k_target;
  j["pass"] = pass;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& ck : checks) {
    nlohmann::json e;
    e["name"] = ck.name;
    e["value"] = std::isfinite(ck.value) ? nlohmann::json(ck.value)
                                         : nlohmann::json("inf");
    e["tol"] = ck.tol;
    e["pass"] = ck.pass;
    e["samples"] = ck.samples;
    e["skipped"] = ck.skipped;
    if (!ck.note.empty()) e["note"] = ck.note;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j.dump(2) + "\n";
}

VerificationReport run_verification(const HelixImmersion& imm,
                                    const VerifyOptions& opt) {
  const HelixSpec& spec = imm.spec();
  const bool space = spec.causal == CausalType::Spacelike;
  const double tau = spec.tau.v();

  VerificationReport rep;
  rep.family = space ? "spacelike" : "timelike";
  rep.theta = spec.theta;
  rep.tau = tau;
  rep.c = spec.c;
  rep.u_range = spec.u_range;
  rep.v_range = spec.v_range;
  rep.grid_u = opt.grid_u;
  rep.grid_v = opt.grid_v;
  rep.nu_target = imm.nu_target();
  rep.k_target = imm.k_target();

  const int want_sign = imm.nu_sign();
  const int eps_want = space ? -1 : +1;
  const double sh = std::sinh(spec.theta), ch = std::cosh(spec.theta);
  const double tt_target = space ? sh * sh : -ch * ch;   // <T,T>
  const double jj_target = space ? sh * sh : ch * ch;    // <JT,JT>
  const double s12 = space ? -tau : tau;                 // A(JT) T-component
  const double s21 = -tau;                               // A(T) JT-component
  const double sdet = space ? -tau * tau : tau * tau;

  auto add = [&rep](std::string name, double value, double tol,
                    std::size_t samples, std::size_t skipped,
                    std::string note = std::string()) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.tol = tol;
    c.pass = std::isfinite(value) && value <= tol;
    c.samples = samples;
    c.skipped = skipped;
    c.note = std::move(note);
    rep.checks.push_back(std::move(c));
  };

  {
    const ProfileReport pr =
        validate_profile(spec.causal, spec.theta, spec.tau, spec.profile);
    add("profile-speed", pr.max_speed_violation, opt.profile_tol, 1000, 0);
    add("profile-vertical", pr.max_vertical_violation, opt.profile_tol, 1000, 0);
  }

  const std::size_t nu_pts = std::max<std::size_t>(opt.grid_u, 2);
  const std::size_t nv_pts = std::max<std::size_t>(opt.grid_v, 2);
  auto u_at = [&spec, nu_pts](std::size_t i) {
    return spec.u_range[0] + (spec.u_range[1] - spec.u_range[0]) *
                                 static_cast<double>(i) /
                                 static_cast<double>(nu_pts - 1);
  };
  auto v_at = [&spec, nv_pts](std::size_t j) {
    return spec.v_range[0] + (spec.v_range[1] - spec.v_range[0]) *
                                 static_cast<double>(j) /
                                 static_cast<double>(nv_pts - 1);
  };

  std::vector<double> w2s(nu_pts * nv_pts);
  double wmax = 0;
  for (std::size_t i = 0; i < nu_pts; ++i)
    for (std::size_t j = 0; j < nv_pts; ++j) {
      const double w2 = w2_at(imm, u_at(i), v_at(j));
      w2s[i * nv_pts + j] = w2;
      wmax = std::max(wmax, std::abs(w2));
    }
  if (!(wmax > 0)) {
    add("grid-rank", kInf, 0.0, 0, nu_pts * nv_pts,
        "chart is singular on the entire grid");
    rep.pass = false;
    return rep;
  }

  std::optional<ClosedForms> cf;
  if (spec.eta && spec.eta->value) cf = closed_forms(spec, *spec.eta);

  std::vector<double> nus, kints;
  double tt_dev = 0, jj_dev = 0;
  double a11 = 0, a12 = 0, a21 = 0, adet = 0;
  double lam_gap = 0, gauss_gap = 0;
  std::size_t causal_bad = 0;
  std::size_t nu_n = 0, nu_skip = 0, fd_n = 0, fd_skip = 0;
  std::size_t lam_n = 0, lam_skip = 0;

  for (std::size_t i = 0; i < nu_pts; ++i) {
    for (std::size_t j = 0; j < nv_pts; ++j) {
      const double u = u_at(i), v = v_at(j);
      const double w2 = std::abs(w2s[i * nv_pts + j]);
      if (w2 < opt.nu_mask_rel * wmax) {
        ++nu_skip;
        ++fd_skip;
        continue;
      }
      SurfaceFrame f;
      try {
        f = surface_frame_oriented(imm, u, v, want_sign);
      } catch (const NullNormal&) {
        ++nu_skip;
        ++fd_skip;
        continue;
      }
      ++nu_n;
      nus.push_back(f.nu);
      if (f.eps != eps_want) ++causal_bad;
      tt_dev = std::max(tt_dev, std::abs(frame_inner(f.t, f.t) - tt_target));
      jj_dev = std::max(jj_dev, std::abs(frame_inner(f.jt, f.jt) - jj_target));

      if (w2 < opt.fd_mask_rel * wmax) {
        ++fd_skip;
        continue;
      }
      ++fd_n;
      const int orient = orient_toward(imm, u, v, want_sign);
      const ShapeData sd = shape_operator(imm, u, v, orient, opt.tol);
      a11 = std::max(a11, std::abs(sd.a[0][0]));
      a12 = std::max(a12, std::abs(sd.a[0][1] - s12));
      a21 = std::max(a21, std::abs(sd.a[1][0] - s21));
      adet = std::max(adet, std::abs(sd.det - sdet));

      const double kint = gauss_curvature_intrinsic(imm, u, v, opt.tol);
      kints.push_back(kint);
      const double kext = gauss_curvature_extrinsic(sd, f.nu, f.eps, spec.tau);
      gauss_gap = std::max(gauss_gap, std::abs(kext - kint));

      if (cf) {
        try {
          const double lam = cf->lambda(cf->internal_u(u), v);
          lam_gap = std::max(lam_gap, std::abs(sd.lambda - lam));
          ++lam_n;
        } catch (const SingularLambda&) {
          ++lam_skip;
        }
      }
    }
  }

  if (nus.empty()) {
    add("angle-mean", kInf, opt.angle_tol, 0, nu_skip, "no usable grid points");
    add("angle-stdev", kInf, opt.angle_tol, 0, nu_skip, "no usable grid points");
  } else {
    const Stats s = stats(nus);
    add("angle-mean", std::abs(s.mean - rep.nu_target), opt.angle_tol, s.n,
        nu_skip);
    add("angle-stdev", s.stdev, opt.angle_tol, s.n, nu_skip);
  }
  add("tangent-norm", std::max(tt_dev, jj_dev), opt.frame_tol, nu_n, nu_skip);
  add("causal-sign", static_cast<double>(causal_bad), 0.0, nu_n, nu_skip);

  if (kints.empty()) {
    add("curvature-mean", kInf, opt.curvature_tol, 0, fd_skip,
        "no usable grid points");
    add("curvature-stdev", kInf, opt.curvature_tol, 0, fd_skip,
        "no usable grid points");
  } else {
    const Stats ks = stats(kints);
    add("curvature-mean", std::abs(ks.mean - rep.k_target), opt.curvature_tol,
        ks.n, fd_skip);
    add("curvature-stdev", ks.stdev, opt.curvature_tol, ks.n, fd_skip);
  }
  add("shape-a11", a11, opt.shape_tol, fd_n, fd_skip);
  add("shape-a12", a12, opt.shape_tol, fd_n, fd_skip);
  add("shape-a21", a21, opt.shape_tol, fd_n, fd_skip);
  add("shape-det", adet, opt.shape_tol, fd_n, fd_skip);
  add("gauss-equation", gauss_gap, opt.curvature_tol, fd_n, fd_skip);

  if (cf) {
    add("lambda-match", lam_n ? lam_gap : kInf, opt.lambda_match_tol, lam_n,
        fd_skip + lam_skip);
  } else {
    add("lambda-match", 0.0, opt.lambda_match_tol, 0, 0,
        "skipped: profile carries no slope function");
  }

  std::mt19937_64 rng(opt.seed);
  {
    std::uniform_real_distribution<double> du(spec.u_range[0], spec.u_range[1]);
    std::uniform_real_distribution<double> dv(spec.v_range[0], spec.v_range[1]);
    double r1 = 0, r2 = 0, cod = 0;
    std::size_t got = 0, tries = 0;
    const std::size_t max_tries = opt.n_random * 100 + 100;
    while (got < opt.n_random && tries < max_tries) {
      ++tries;
      const double u = du(rng), v = dv(rng);
      if (std::abs(w2_at(imm, u, v)) < opt.fd_mask_rel * wmax) continue;
      const int orient = orient_toward(imm, u, v, want_sign);
      const StructureResiduals sr = structure_residuals(imm, u, v, orient, opt.tol);
      r1 = std::max(r1, residual_norm(sr.r1));
      r2 = std::max(r2, std::abs(sr.r2));
      cod = std::max(
          cod, residual_norm(codazzi_residual(imm, u, v, orient, opt.tol)));
      ++got;
    }
    const std::size_t rejected = tries - got;
    const std::string note =
        got < opt.n_random ? "undersampled: fold mask rejected too many draws"
                           : std::string();
    add("structure-r1", got ? r1 : kInf, opt.residual_tol, got, rejected, note);
    add("structure-r2", got ? r2 : kInf, opt.residual_tol, got, rejected, note);
    add("codazzi", got ? cod : kInf, opt.residual_tol, got, rejected, note);
  }

  if (cf) {
    const double sa = cf->internal_u(spec.u_range[0]);
    const double sb = cf->internal_u(spec.u_range[1]);
    const double lo = std::min(sa, sb), hi = std::max(sa, sb);
    const double vmid = 0.5 * (spec.v_range[0] + spec.v_range[1]);
    const std::size_t n = 201;
    std::vector<double> samples;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
      const double clearance = std::abs(std::remainder(
          cf->phase(s, vmid) - std::numbers::pi / 2.0, std::numbers::pi));
      if (clearance > 0.35) samples.push_back(s);
    }
    if (samples.size() >= 10) {
      const double res = lambda_ode_residual(
          spec.causal, spec.theta, spec.tau,
          [&cf, vmid](double s) { return cf->lambda(s, vmid); }, samples,
          opt.tol.lambda_step);
      add("lambda-ode", res, opt.lambda_ode_tol, samples.size(),
          n - samples.size());
    } else {
      add("lambda-ode", kInf, opt.lambda_ode_tol, 0, n,
          "no samples clear of the tan poles");
    }
  } else {
    add("lambda-ode", 0.0, opt.lambda_ode_tol, 0, 0,
        "skipped: profile carries no slope function");
  }

  {
    std::uniform_real_distribution<double> dc(-2.0, 2.0);
    double worst = 0;
    const std::size_t n = 20;
    for (std::size_t k = 0; k < n; ++k) {
      const PointR3 p{dc(rng), dc(rng), dc(rng)};
      const FrameVector x{dc(rng), dc(rng), dc(rng)};
      worst = std::max(worst, residual_norm(killing_residual(x, p, spec.tau)));
    }
    add("killing", worst, opt.killing_tol, n, 0);
  }

  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                         [](const CheckResult& c) { return c.pass; });
  return rep;
}

}  // namespace lhg
