#include "lhg/helix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

namespace lhg {

namespace {

double clearance_to_pole(double phase) {
  // distance to the nearest zero of cos, i.e. pole of tan
  return std::abs(std::remainder(phase - std::numbers::pi / 2.0, std::numbers::pi));
}

void validate_causal(CausalType causal, double theta) {
  if (!std::isfinite(theta)) throw InvalidSpec("theta must be finite");
  if (causal == CausalType::Spacelike && !(theta > 0))
    throw InvalidSpec("spacelike family needs theta > 0");
  if (causal == CausalType::Timelike && theta == 0)
    throw InvalidSpec(
        "timelike family needs theta != 0: theta = 0 degenerates into a Hopf "
        "cylinder, which is not a helix chart");
}

}  // namespace

Eta eta_linear(double slope, double offset) {
  if (!std::isfinite(slope) || !std::isfinite(offset))
    throw InvalidSpec("eta_linear: non-finite parameters");
  Eta e;
  e.value = [slope, offset](double v) { return slope * v + offset; };
  e.deriv = [slope](double) { return slope; };
  return e;
}

Eta eta_example(CausalType causal, double theta, Tau tau, double c) {
  validate_causal(causal, theta);
  Eta e;
  if (causal == CausalType::Spacelike) {
    const double sh = std::sinh(theta);
    e.value = [c](double v) { return v + c; };
    e.deriv = [](double) { return 1.0; };
    e.initial_at = [sh, tau](double v0) {
      return std::array<double, 3>{sh * std::cos(v0), -sh * std::sin(v0),
                                   tau.v() * v0 * sh * sh};
    };
  } else {
    const double ch = std::cosh(theta);
    e.value = [c](double v) { return v - c; };
    e.deriv = [](double) { return 1.0; };
    e.initial_at = [ch, tau](double v0) {
      return std::array<double, 3>{-ch * std::cos(v0), -ch * std::sin(v0),
                                   -tau.v() * v0 * ch * ch};
    };
  }
  return e;
}

ProfileCurve example_profile(CausalType causal, double theta, Tau tau, double v0,
                             double v1) {
  validate_causal(causal, theta);
  ProfileCurve p;
  p.v0 = v0;
  p.v1 = v1;
  const double t = tau.v();
  if (causal == CausalType::Spacelike) {
    const double sh = std::sinh(theta);
    p.f1 = [sh](double v) { return sh * std::cos(v); };
    p.df1 = [sh](double v) { return -sh * std::sin(v); };
    p.d2f1 = [sh](double v) { return -sh * std::cos(v); };
    p.f2 = [sh](double v) { return -sh * std::sin(v); };
    p.df2 = [sh](double v) { return -sh * std::cos(v); };
    p.d2f2 = [sh](double v) { return sh * std::sin(v); };
    p.f3 = [sh, t](double v) { return t * v * sh * sh; };
    p.df3 = [sh, t](double) { return t * sh * sh; };
    p.d2f3 = [](double) { return 0.0; };
  } else {
    const double ch = std::cosh(theta);
    p.f1 = [ch](double v) { return -ch * std::cos(v); };
    p.df1 = [ch](double v) { return ch * std::sin(v); };
    p.d2f1 = [ch](double v) { return ch * std::cos(v); };
    p.f2 = [ch](double v) { return -ch * std::sin(v); };
    p.df2 = [ch](double v) { return -ch * std::cos(v); };
    p.d2f2 = [ch](double v) { return ch * std::sin(v); };
    p.f3 = [ch, t](double v) { return -t * v * ch * ch; };
    p.df3 = [ch, t](double) { return -t * ch * ch; };
    p.d2f3 = [](double) { return 0.0; };
  }
  return p;
}

ProfileCurve profile_from_eta(CausalType causal, double theta, Tau tau,
                              const Eta& eta, double c, double v0, double v1,
                              std::size_t n) {
  validate_causal(causal, theta);
  if (!eta.value) throw InvalidSpec("profile_from_eta: eta.value missing");

  const double t = tau.v();
  const bool space = causal == CausalType::Spacelike;
  const double speed = space ? std::sinh(theta) : std::cosh(theta);
  const double shift = space ? -c : c;

  auto val = eta.value;
  auto slope1 = [val, speed, shift, space](double v) {
    const double e = val(v);
    if (!std::isfinite(e))
      throw NonFiniteValue("profile_from_eta: eta produced a non-finite value");
    return space ? -speed * std::sin(e + shift) : speed * std::sin(e + shift);
  };
  auto slope2 = [val, speed, shift](double v) {
    return -speed * std::cos(val(v) + shift);
  };

  auto rhs = [&](double v, const std::array<double, 3>& y) {
    const double d1 = slope1(v), d2 = slope2(v);
    return std::array<double, 3>{d1, d2, t * (y[1] * d1 - y[0] * d2)};
  };

  std::array<double, 3> y0{0, 0, 0};
  if (eta.initial_at) y0 = eta.initial_at(v0);
  OdeSolution<3> sol = rk4_solve<3>(rhs, y0, v0, v1, n);

  auto component = [&sol](int k) {
    std::vector<double> y(sol.x.size()), dy(sol.x.size());
    for (std::size_t i = 0; i < sol.x.size(); ++i) {
      y[i] = sol.y[i][static_cast<std::size_t>(k)];
      dy[i] = sol.dy[i][static_cast<std::size_t>(k)];
    }
    return SampledCurve(sol.x, std::move(y), std::move(dy));
  };
  auto c1 = std::make_shared<SampledCurve>(component(0));
  auto c2 = std::make_shared<SampledCurve>(component(1));
  auto c3 = std::make_shared<SampledCurve>(component(2));

  ProfileCurve p;
  p.v0 = v0;
  p.v1 = v1;
  p.f1 = [c1](double v) { return c1->value(v); };
  p.f2 = [c2](double v) { return c2->value(v); };
  p.f3 = [c3](double v) { return c3->value(v); };
  p.df1 = slope1;
  p.df2 = slope2;
  p.df3 = [c1, c2, slope1, slope2, t](double v) {
    return t * (c2->value(v) * slope1(v) - c1->value(v) * slope2(v));
  };

  std::function<double(double)> eta_deriv = eta.deriv;
  if (!eta_deriv) {
    eta_deriv = [val](double v) { return central_diff(val, v, 1e-6); };
  }
  // d/dv of the slopes: f1'' = -+ speed cos(eta + shift) eta',
  // f2'' = speed sin(eta + shift) eta'
  p.d2f1 = [val, eta_deriv, speed, shift, space](double v) {
    const double k = speed * std::cos(val(v) + shift) * eta_deriv(v);
    return space ? -k : k;
  };
  p.d2f2 = [val, eta_deriv, speed, shift](double v) {
    return speed * std::sin(val(v) + shift) * eta_deriv(v);
  };
  p.d2f3 = [c1, c2, s1 = p.d2f1, s2 = p.d2f2, t](double v) {
    return t * (c2->value(v) * s1(v) - c1->value(v) * s2(v));
  };
  return p;
}

ProfileCurve profile_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("profile_from_csv: cannot open " + path);

  std::vector<std::array<double, 7>> rows;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("v", 0) == 0) continue;  // header
      throw ParseError("profile_from_csv: missing header row");
    }
    std::istringstream ss(line);
    std::array<double, 7> row{};
    std::string cell;
    for (int k = 0; k < 7; ++k) {
      if (!std::getline(ss, cell, ','))
        throw ParseError("profile_from_csv: short row at line " +
                         std::to_string(lineno));
      try {
        row[static_cast<std::size_t>(k)] = std::stod(cell);
      } catch (const std::exception&) {
        throw ParseError("profile_from_csv: bad number at line " +
                         std::to_string(lineno));
      }
    }
    rows.push_back(row);
  }
  if (rows.size() < 2) throw ParseError("profile_from_csv: need at least 2 rows");

  std::vector<double> v(rows.size());
  std::array<std::vector<double>, 3> f, df;
  for (auto& a : f) a.resize(rows.size());
  for (auto& a : df) a.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    v[i] = rows[i][0];
    if (i > 0 && !(v[i] > v[i - 1]))
      throw ParseError("profile_from_csv: v column must increase strictly");
    for (int k = 0; k < 3; ++k) {
      f[static_cast<std::size_t>(k)][i] = rows[i][static_cast<std::size_t>(k) + 1];
      df[static_cast<std::size_t>(k)][i] = rows[i][static_cast<std::size_t>(k) + 4];
    }
  }

  ProfileCurve p;
  p.v0 = v.front();
  p.v1 = v.back();
  auto c1 = std::make_shared<SampledCurve>(v, f[0], df[0]);
  auto c2 = std::make_shared<SampledCurve>(v, f[1], df[1]);
  auto c3 = std::make_shared<SampledCurve>(v, f[2], df[2]);
  p.f1 = [c1](double x) { return c1->value(x); };
  p.f2 = [c2](double x) { return c2->value(x); };
  p.f3 = [c3](double x) { return c3->value(x); };
  p.df1 = [c1](double x) { return c1->deriv(x); };
  p.df2 = [c2](double x) { return c2->deriv(x); };
  p.df3 = [c3](double x) { return c3->deriv(x); };
  return p;
}

ProfileReport validate_profile(CausalType causal, double theta, Tau tau,
                               const ProfileCurve& p, std::size_t samples) {
  validate_causal(causal, theta);
  if (samples < 2) throw InvalidSpec("validate_profile: need >= 2 samples");
  const double speed = causal == CausalType::Spacelike ? std::sinh(theta)
                                                       : std::cosh(theta);
  const double r2 = speed * speed;
  const double t = tau.v();
  ProfileReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    const double v =
        p.v0 + (p.v1 - p.v0) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double d1 = p.df1(v), d2 = p.df2(v), d3 = p.df3(v);
    rep.max_speed_violation =
        std::max(rep.max_speed_violation, std::abs(d1 * d1 + d2 * d2 - r2));
    rep.max_vertical_violation = std::max(
        rep.max_vertical_violation,
        std::abs(d3 - t * (p.f2(v) * d1 - p.f1(v) * d2)));
  }
  return rep;
}

HelixImmersion::HelixImmersion(HelixSpec spec)
    : Immersion(Domain{spec.u_range[0], spec.u_range[1], spec.v_range[0],
                       spec.v_range[1]},
                spec.tau),
      spec_(std::move(spec)) {
  validate_causal(spec_.causal, spec_.theta);
  if (!(spec_.u_range[1] > spec_.u_range[0]) ||
      !(spec_.v_range[1] > spec_.v_range[0]))
    throw InvalidSpec("helix chart: empty parameter rectangle");
  if (!spec_.profile.f1 || !spec_.profile.f2 || !spec_.profile.f3 ||
      !spec_.profile.df1 || !spec_.profile.df2 || !spec_.profile.df3)
    throw InvalidSpec("helix chart: profile functions missing");

  const double t = spec_.tau.v();
  if (spec_.causal == CausalType::Spacelike) {
    const double sh = std::sinh(spec_.theta), ch = std::cosh(spec_.theta);
    const double th = sh / ch;
    cx_ = th / (2.0 * t);
    w_ = th / 2.0;
    k3_ = sh * sh / (4.0 * t * ch * ch);
  } else {
    const double sh = std::sinh(spec_.theta), ch = std::cosh(spec_.theta);
    const double coth = ch / sh;
    cx_ = -coth / (2.0 * t);
    w_ = -coth / 2.0;
    k3_ = ch * ch / (4.0 * t * sh * sh);
  }
}

PointR3 HelixImmersion::position(double u, double v) const {
  const double f1 = spec_.profile.f1(v), f2 = spec_.profile.f2(v),
               f3 = spec_.profile.f3(v);
  const double su = std::sin(u), cu = std::cos(u);
  return {cx_ * su + f1, -cx_ * cu + f2,
          k3_ * u + w_ * (f1 * cu + f2 * su) + f3};
}

CoordVector HelixImmersion::d_u(double u, double v) const {
  const double f1 = spec_.profile.f1(v), f2 = spec_.profile.f2(v);
  const double su = std::sin(u), cu = std::cos(u);
  return {cx_ * cu, cx_ * su, k3_ + w_ * (-f1 * su + f2 * cu)};
}

CoordVector HelixImmersion::d_v(double u, double v) const {
  const double d1 = spec_.profile.df1(v), d2 = spec_.profile.df2(v),
               d3 = spec_.profile.df3(v);
  const double su = std::sin(u), cu = std::cos(u);
  return {d1, d2, w_ * (d1 * cu + d2 * su) + d3};
}

CoordVector HelixImmersion::d_uu(double u, double v) const {
  const double f1 = spec_.profile.f1(v), f2 = spec_.profile.f2(v);
  const double su = std::sin(u), cu = std::cos(u);
  return {-cx_ * su, cx_ * cu, w_ * (-f1 * cu - f2 * su)};
}

CoordVector HelixImmersion::d_uv(double u, double v) const {
  const double d1 = spec_.profile.df1(v), d2 = spec_.profile.df2(v);
  const double su = std::sin(u), cu = std::cos(u);
  return {0, 0, w_ * (-d1 * su + d2 * cu)};
}

CoordVector HelixImmersion::d_vv(double u, double v) const {
  if (!spec_.profile.has_second()) return Immersion::d_vv(u, v);
  const double s1 = spec_.profile.d2f1(v), s2 = spec_.profile.d2f2(v),
               s3 = spec_.profile.d2f3(v);
  const double su = std::sin(u), cu = std::cos(u);
  return {s1, s2, w_ * (s1 * cu + s2 * su) + s3};
}

double HelixImmersion::nu_target() const {
  return spec_.causal == CausalType::Spacelike ? std::cosh(spec_.theta)
                                               : std::sinh(spec_.theta);
}

int HelixImmersion::nu_sign() const {
  return spec_.causal == CausalType::Spacelike ? +1 : (spec_.theta > 0 ? +1 : -1);
}

double HelixImmersion::k_target() const {
  const double t2 = spec_.tau.v() * spec_.tau.v();
  const double nb = nu_target();
  return spec_.causal == CausalType::Spacelike ? 4.0 * t2 * nb * nb
                                               : -4.0 * t2 * nb * nb;
}

std::optional<double> HelixImmersion::fold_clearance(double u, double v) const {
  if (!spec_.eta || !spec_.eta->value) return std::nullopt;
  const double e = spec_.eta->value(v);
  const double phase = spec_.causal == CausalType::Spacelike
                           ? e - spec_.c + u
                           : e + spec_.c - u;
  return clearance_to_pole(phase);
}

HelixImmersion construct(const HelixSpec& spec) { return HelixImmersion(spec); }

HelixSpec example_spec(CausalType causal, double theta, Tau tau, double c,
                       std::array<double, 2> u_range,
                       std::array<double, 2> v_range) {
  HelixSpec s;
  s.causal = causal;
  s.theta = theta;
  s.tau = tau;
  s.c = c;
  s.u_range = u_range;
  s.v_range = v_range;
  s.profile = example_profile(causal, theta, tau, v_range[0], v_range[1]);
  s.eta = eta_example(causal, theta, tau, c);
  return s;
}

ClosedForms closed_forms(const HelixSpec& spec, const Eta& eta, double delta) {
  validate_causal(spec.causal, spec.theta);
  if (!eta.value) throw InvalidSpec("closed_forms: eta.value missing");
  const bool space = spec.causal == CausalType::Spacelike;
  const double nb = space ? std::cosh(spec.theta) : std::sinh(spec.theta);
  const double t = spec.tau.v();
  const double slope = 2.0 * t * nb * nb;  // phase decrease per unit internal u
  const double c = spec.c;
  auto value = eta.value;

  ClosedForms cf;
  cf.delta = delta;
  cf.phase = [value, slope](double s, double v) { return value(v) - slope * s; };
  cf.lambda = [phase = cf.phase, t, nb, delta](double s, double v) {
    const double w = phase(s, v);
    if (clearance_to_pole(w) < delta)
      throw SingularLambda("lambda: phase inside the pole guard window");
    return 2.0 * t * nb * std::tan(w);
  };
  cf.phi = [slope, c, space](double s) { return (space ? -slope : slope) * s + c; };
  if (space) {
    const double ch = nb;
    cf.a = [phase = cf.phase, ch](double s, double v) {
      return std::sin(phase(s, v)) / ch;
    };
  } else {
    const double sh = nb;
    cf.a = [phase = cf.phase, sh](double s, double v) {
      return -std::sin(phase(s, v)) / sh;
    };
  }
  cf.b = [phase = cf.phase](double s, double v) { return std::cos(phase(s, v)); };
  cf.internal_u = [slope, c, space](double u) {
    return space ? (c - u) / slope : (u - c) / slope;
  };
  return cf;
}

double lambda_ode_residual(CausalType causal, double theta, Tau tau,
                           const std::function<double(double)>& lambda_along,
                           const std::vector<double>& samples, double h) {
  validate_causal(causal, theta);
  if (!(h > 0)) throw InvalidSpec("lambda_ode_residual: step must be positive");
  const double nb = causal == CausalType::Spacelike ? std::cosh(theta)
                                                    : std::sinh(theta);
  const double t2 = tau.v() * tau.v();
  double worst = 0;
  for (double s : samples) {
    const double dl = central_diff(lambda_along, s, h);
    const double l = lambda_along(s);
    worst = std::max(worst, std::abs(dl + l * l * nb + 4.0 * t2 * nb * nb * nb));
  }
  return worst;
}

}  // namespace lhg
