#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lhg/helix.hpp"
#include "lhg/surface.hpp"

// Invariant suite for constructed constant-angle surfaces: angle and curvature
// constancy, shape-operator form, structure/compatibility residuals, profile
// constraints, and ambient identity spot checks, aggregated into a report.

namespace lhg {

struct CheckResult {
  std::string name;
  double value = 0;  // measured worst-case magnitude
  double tol = 0;
  bool pass = false;
  std::size_t samples = 0;  // points that entered the statistic
  std::size_t skipped = 0;  // points masked out (folds, guard windows)
  std::string note;
};

struct VerifyOptions {
  std::size_t grid_u = 50, grid_v = 50;
  std::size_t n_random = 100;  // sample count for the residual checks
  std::uint64_t seed = 20260816;
  ToleranceConfig tol;  // finite-difference / integrator step sizes

  // Fold lines (where the chart's coordinate vectors become dependent) are
  // genuine rank-1 degeneracies of the u-periodic charts.  Points whose
  // |<W,W>|, W = Fu x Fv, falls below these fractions of the grid maximum are
  // excluded: a loose mask for plain frame evaluations, a wide one for
  // finite-difference quantities whose noise scales like 1/|<W,W>|.
  double nu_mask_rel = 1e-9;
  double fd_mask_rel = 0.15;

  double profile_tol = 1e-8;
  double angle_tol = 1e-9;
  double frame_tol = 1e-9;
  double shape_tol = 1e-4;
  double lambda_match_tol = 1e-3;
  double curvature_tol = 1e-4;
  double residual_tol = 1e-4;
  double lambda_ode_tol = 1e-6;
  double killing_tol = 1e-12;
};

struct VerificationReport {
  int schema = 1;
  std::string family;  // "spacelike" | "timelike"
  double theta = 0, tau = 0, c = 0;
  std::array<double, 2> u_range{0, 0}, v_range{0, 0};
  std::size_t grid_u = 0, grid_v = 0;
  double nu_target = 0, k_target = 0;
  std::vector<CheckResult> checks;
  bool pass = false;  // conjunction of all checks

  std::string to_json() const;  // versioned via "schema": 1
  const CheckResult* find(const std::string& name) const;
};

VerificationReport run_verification(const HelixImmersion& imm,
                                    const VerifyOptions& opt = {});

}  // namespace lhg
