#pragma once

#include <array>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "lhg/ambient.hpp"
#include "lhg/numerics.hpp"
#include "lhg/surface.hpp"

// Construction and closed-form data for the two constant-angle families:
// surfaces whose unit normal keeps a constant product with the vertical
// Killing field E3 (nu = cosh(theta) on spacelike surfaces, sinh(theta) on
// timelike ones).
//
// Convention used throughout: the chart coordinate u of a constructed surface
// is the rotation phase phi, NOT the arc parameter along T.  The internal
// parameter (the one with d/du = T) relates to the chart through u = phi(s),
// phi(s) = -2 tau cosh^2(theta) s + c   (spacelike),
// phi(s) =  2 tau sinh^2(theta) s + c   (timelike).

namespace lhg {

// profile data (f1, f2, f3) with first and optional second derivatives
struct ProfileCurve {
  std::function<double(double)> f1, f2, f3;
  std::function<double(double)> df1, df2, df3;
  std::function<double(double)> d2f1, d2f2, d2f3;  // may be empty
  double v0 = 0, v1 = 1;
  bool has_second() const { return static_cast<bool>(d2f1); }
};

// slope data eta for the profile ODEs; deriv may be empty (finite differenced
// when second-order jets are requested), initial_at supplies integration
// constants at the start of the v-range (zeros when absent)
struct Eta {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<std::array<double, 3>(double)> initial_at;
};

enum class EtaKind { Example, Linear, Csv };

struct HelixSpec {
  CausalType causal = CausalType::Spacelike;
  double theta = 1.0;
  Tau tau{1.0};
  double c = 0.0;
  ProfileCurve profile;
  std::optional<Eta> eta;  // present when the profile came from a slope function
  std::array<double, 2> u_range{0.0, 2.0 * std::numbers::pi};
  std::array<double, 2> v_range{0.0, 2.0 * std::numbers::pi};
};

// linear slope eta(v) = slope*v + offset, zero integration constants
Eta eta_linear(double slope, double offset);

// the example slope eta(v) = v + c (spacelike) / v - c (timelike), with
// integration constants matching the closed-form profiles below
Eta eta_example(CausalType causal, double theta, Tau tau, double c);

// closed-form profiles belonging to eta_example:
//   spacelike: f1 = sinh(theta) cos v, f2 = -sinh(theta) sin v,
//              f3 = tau v sinh^2(theta)
//   timelike:  f1 = -cosh(theta) cos v, f2 = -cosh(theta) sin v,
//              f3 = -tau v cosh^2(theta)
ProfileCurve example_profile(CausalType causal, double theta, Tau tau,
                             double v0 = 0.0, double v1 = 2.0 * std::numbers::pi);

// integrate the profile ODEs
//   f1' = -sinh(theta) sin(eta - c), f2' = -sinh(theta) cos(eta - c)   (spacelike)
//   f1' =  cosh(theta) sin(eta + c), f2' = -cosh(theta) cos(eta + c)   (timelike)
//   f3' = tau (f2 f1' - f1 f2')
// with fixed-step RK4 over [v0, v1] (n steps) and cubic Hermite read-out.
ProfileCurve profile_from_eta(CausalType causal, double theta, Tau tau,
                              const Eta& eta, double c, double v0, double v1,
                              std::size_t n);

// CSV columns: v, f1, f2, f3, f1', f2', f3' (header row required)
ProfileCurve profile_from_csv(const std::string& path);

struct ProfileReport {
  double max_speed_violation = 0;     // | f1'^2 + f2'^2 - r^2 |
  double max_vertical_violation = 0;  // | f3' - tau (f2 f1' - f1 f2') |
  bool pass(double tol) const {
    return max_speed_violation <= tol && max_vertical_violation <= tol;
  }
};
ProfileReport validate_profile(CausalType causal, double theta, Tau tau,
                               const ProfileCurve& p, std::size_t samples = 1000);

// analytic chart of a constant-angle surface built from a profile
class HelixImmersion : public Immersion {
 public:
  explicit HelixImmersion(HelixSpec spec);

  PointR3 position(double u, double v) const override;
  CoordVector d_u(double u, double v) const override;
  CoordVector d_v(double u, double v) const override;
  CoordVector d_uu(double u, double v) const override;
  CoordVector d_uv(double u, double v) const override;
  CoordVector d_vv(double u, double v) const override;  // falls back to
                                                        // differences when the
                                                        // profile has no f''

  const HelixSpec& spec() const { return spec_; }
  double nu_target() const;   // cosh(theta) / sinh(theta)
  int nu_sign() const;        // expected sign of nu for this spec
  double k_target() const;    // 4 tau^2 cosh^2 / -4 tau^2 sinh^2
  // distance (radians) from the fold phase eta(v) - c + u (spacelike) resp.
  // eta(v) + c - u (timelike) to the nearest pole of tan; needs eta
  std::optional<double> fold_clearance(double u, double v) const;

 private:
  HelixSpec spec_;
  double cx_, w_, k3_;  // cached coefficients of the chart formulas
};

// validates the spec (tau != 0 by type; spacelike needs theta > 0, timelike
// theta != 0 -- theta = 0 would be a Hopf cylinder, not a helix surface)
HelixImmersion construct(const HelixSpec& spec);

// spec with the example profile attached, as used for the mesh presets
HelixSpec example_spec(CausalType causal, double theta, Tau tau, double c = 0.0,
                       std::array<double, 2> u_range = {0.0, 2.0 * std::numbers::pi},
                       std::array<double, 2> v_range = {0.0, 2.0 * std::numbers::pi});

// Closed forms in the internal coordinates (s, v) where d/ds = T:
//   nu_bar    = cosh(theta) (spacelike) / sinh(theta) (timelike)
//   phase     = eta(v) - 2 tau nu_bar^2 s
//   lambda    = 2 tau nu_bar tan(phase)
//   phi(s)    = -+ 2 tau nu_bar^2 s + c (sign per family)
//   d_v F     = a T + b JT
// lambda throws SingularLambda when the phase is within delta of a pole.
struct ClosedForms {
  std::function<double(double, double)> lambda;  // (s, v)
  std::function<double(double)> phi;             // phi(s)
  std::function<double(double, double)> a, b;    // (s, v)
  std::function<double(double, double)> phase;   // (s, v)
  std::function<double(double)> internal_u;      // chart u -> s
  double delta = 1e-3;
};
ClosedForms closed_forms(const HelixSpec& spec, const Eta& eta,
                         double delta = 1e-3);

// Max residual of T(lambda) + lambda^2 nu_bar + 4 tau^2 nu_bar^3 over the
// given internal-coordinate samples; T(lambda) by central difference of step h.
double lambda_ode_residual(CausalType causal, double theta, Tau tau,
                           const std::function<double(double)>& lambda_along,
                           const std::vector<double>& samples, double h);

}  // namespace lhg
