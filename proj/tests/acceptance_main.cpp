// Acceptance gate: one line per criterion, exit 0 only if every line passes.
// Run with --cli <path-to-lhg-binary> so the end-to-end criterion can drive
// the real executable.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lhg/ambient.hpp"
#include "lhg/helix.hpp"
#include "lhg/verify.hpp"

using namespace lhg;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;

// pinned acceptance tolerances
constexpr double kExactTol = 1e-12;      // ambient identities
constexpr double kAngleTol = 1e-9;       // nu constancy and target
constexpr double kCurvatureTol = 1e-4;   // intrinsic curvature vs target
constexpr double kShapeTol = 1e-4;       // shape-operator entries
constexpr double kLambdaMatchTol = 1e-3; // measured vs closed-form slope
constexpr double kResidualTol = 1e-4;    // structure + compatibility
constexpr double kLambdaOdeTol = 1e-6;   // slope flow equation
constexpr double kProfileTol = 1e-8;     // quadrature vs closed profiles
constexpr double kKillingBudget = 1.0;   // seconds, criterion 1
constexpr double kSurfaceBudget = 10.0;  // seconds per verified surface
constexpr double kCliBudget = 60.0;      // seconds, criterion 8

int g_failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  if (!ok) ++g_failures;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct VerifiedSurface {
  CausalType causal;
  double theta, tau;
  VerificationReport rep;
  double seconds;
};

double check_value(const VerificationReport& rep, const std::string& name) {
  const CheckResult* c = rep.find(name);
  return c ? c->value : std::numeric_limits<double>::infinity();
}

// ---- criterion 1: the vertical field is Killing -------------------------

void criterion_killing() {
  std::mt19937_64 rng(7041);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  const std::array<double, 5> taus{1.0, -1.0, 0.5, -0.5, 2.0};
  const auto t0 = Clock::now();
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const FrameVector x{d(rng), d(rng), d(rng)};
    const PointR3 p{d(rng), d(rng), d(rng)};
    const Tau tau(taus[i % taus.size()]);
    worst = std::max(worst, residual_norm(killing_residual(x, p, tau)));
  }
  const double dt = seconds_since(t0);
  const bool ok = worst <= kExactTol && dt < kKillingBudget;
  report(1, ok,
         "vertical field is Killing: worst residual " + num(worst) + " <= " +
             num(kExactTol) + " over 1000 draws, " + num(dt) + " s");
}

// ---- criterion 2: curvature tensor table vs closed formula --------------

void criterion_riemann() {
  std::mt19937_64 rng(7042);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  const std::array<double, 5> taus{1.0, -1.0, 0.5, -0.5, 2.0};
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const FrameVector x{d(rng), d(rng), d(rng)};
    const FrameVector y{d(rng), d(rng), d(rng)};
    const FrameVector z{d(rng), d(rng), d(rng)};
    const Tau tau(taus[i % taus.size()]);
    worst = std::max(
        worst, residual_norm(riemann_table(x, y, z, tau) -
                             riemann_formula(x, y, z, tau)));
  }

  // frozen component values on the orthonormal frame
  const Tau tau(1.5);
  const double t2 = 2.25;
  const FrameVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  double table = 0;
  table = std::max(table, residual_norm(riemann_table(e1, e2, e1, tau) -
                                        (-3.0 * t2) * e2));
  table = std::max(table, residual_norm(riemann_table(e1, e2, e2, tau) -
                                        (3.0 * t2) * e1));
  table = std::max(table, residual_norm(riemann_table(e1, e3, e1, tau) - t2 * e3));
  table = std::max(table, residual_norm(riemann_table(e1, e3, e3, tau) - t2 * e1));
  table = std::max(table, residual_norm(riemann_table(e2, e3, e2, tau) - t2 * e3));
  table = std::max(table, residual_norm(riemann_table(e2, e3, e3, tau) - t2 * e2));

  const bool ok = worst <= kExactTol && table == 0.0;
  report(2, ok,
         "curvature tensor table matches the closed formula: worst gap " +
             num(worst) + " <= " + num(kExactTol) +
             " over 1000 triples, frame components exact");
}

// ---- criteria 3-6: the verification matrix ------------------------------

std::vector<VerifiedSurface> run_matrix() {
  const std::array<double, 6> thetas{0.5, 1.0, kPi / 3, kPi / 4, kPi / 6, kPi / 8};
  const std::array<double, 2> taus{1.0, 0.5};
  std::vector<VerifiedSurface> out;
  for (const CausalType causal : {CausalType::Spacelike, CausalType::Timelike}) {
    for (const double theta : thetas) {
      for (const double tau : taus) {
        const HelixImmersion imm = construct(example_spec(causal, theta, Tau(tau)));
        const auto t0 = Clock::now();
        VerificationReport rep = run_verification(imm);
        const double dt = seconds_since(t0);
        out.push_back({causal, theta, tau, std::move(rep), dt});
      }
    }
  }
  return out;
}

void criterion_family(int n, const std::vector<VerifiedSurface>& matrix,
                      CausalType causal, const char* label) {
  double angle = 0, curvature = 0, slowest = 0;
  int count = 0;
  for (const auto& s : matrix) {
    if (s.causal != causal) continue;
    ++count;
    angle = std::max({angle, check_value(s.rep, "angle-mean"),
                      check_value(s.rep, "angle-stdev")});
    curvature = std::max({curvature, check_value(s.rep, "curvature-mean"),
                          check_value(s.rep, "curvature-stdev")});
    slowest = std::max(slowest, s.seconds);
  }
  const bool ok = count == 12 && angle <= kAngleTol &&
                  curvature <= kCurvatureTol && slowest < kSurfaceBudget;
  report(n, ok,
         std::string(label) +
             " family: constant angle and curvature targets on 12 surfaces, "
             "worst angle dev " +
             num(angle) + " <= " + num(kAngleTol) + ", worst curvature dev " +
             num(curvature) + " <= " + num(kCurvatureTol) + ", slowest " +
             num(slowest) + " s");
}

void criterion_shape(const std::vector<VerifiedSurface>& matrix) {
  double entries = 0, slope = 0;
  for (const auto& s : matrix) {
    entries = std::max({entries, check_value(s.rep, "shape-a11"),
                        check_value(s.rep, "shape-a12"),
                        check_value(s.rep, "shape-a21"),
                        check_value(s.rep, "shape-det")});
    slope = std::max(slope, check_value(s.rep, "lambda-match"));
  }
  const bool ok = entries <= kShapeTol && slope <= kLambdaMatchTol;
  report(5, ok,
         "shape operator: worst entry/determinant dev " + num(entries) +
             " <= " + num(kShapeTol) + ", worst slope mismatch " + num(slope) +
             " <= " + num(kLambdaMatchTol) + " on 24 surfaces");
}

void criterion_residuals(const std::vector<VerifiedSurface>& matrix) {
  double frame = 0, flow = 0;
  for (const auto& s : matrix) {
    frame = std::max({frame, check_value(s.rep, "structure-r1"),
                      check_value(s.rep, "structure-r2"),
                      check_value(s.rep, "codazzi")});
    flow = std::max(flow, check_value(s.rep, "lambda-ode"));
  }
  const bool ok = frame <= kResidualTol && flow <= kLambdaOdeTol;
  report(6, ok,
         "derivative identities: worst structure/compatibility residual " +
             num(frame) + " <= " + num(kResidualTol) +
             " at 100 random points per surface, worst slope-flow residual " +
             num(flow) + " <= " + num(kLambdaOdeTol));
}

// ---- criterion 7: profile quadrature -------------------------------------

double profile_gap(CausalType causal, std::size_t n, bool nodes_only) {
  const double theta = 1.0, c = 0.3;
  const Tau tau(1.0);
  const Eta eta = eta_example(causal, theta, tau, c);
  const ProfileCurve want = example_profile(causal, theta, tau);
  const ProfileCurve got =
      profile_from_eta(causal, theta, tau, eta, c, 0.0, 2 * kPi, n);
  const std::size_t samples = nodes_only ? n : 100;
  double worst = 0;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double v = 2 * kPi * double(i) / double(samples);
    worst = std::max({worst, std::abs(got.f1(v) - want.f1(v)),
                      std::abs(got.f2(v) - want.f2(v)),
                      std::abs(got.f3(v) - want.f3(v)),
                      std::abs(got.df1(v) - want.df1(v)),
                      std::abs(got.df2(v) - want.df2(v)),
                      std::abs(got.df3(v) - want.df3(v))});
  }
  return worst;
}

void criterion_profiles() {
  const double worst = std::max(profile_gap(CausalType::Spacelike, 512, false),
                                profile_gap(CausalType::Timelike, 512, false));
  const double e64 = profile_gap(CausalType::Spacelike, 64, true);
  const double e128 = profile_gap(CausalType::Spacelike, 128, true);
  const double ratio = e64 / e128;
  const bool ok = worst <= kProfileTol && ratio > 10.0 && ratio < 22.0;
  report(7, ok,
         "profile quadrature: worst gap to closed profiles " + num(worst) +
             " <= " + num(kProfileTol) + ", step-halving ratio " + num(ratio) +
             " (expect ~16)");
}

// ---- criterion 8: the command-line pipeline ------------------------------

int run_cmd(const std::string& cmd) {
  const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void criterion_cli(const std::string& cli) {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;

  if (cli.empty()) {
    report(8, false, "no --cli <path> given, cannot drive the executable");
    return;
  }

  const fs::path dir =
      fs::temp_directory_path() /
      ("accept-cli-" + std::to_string(
                           std::chrono::system_clock::now().time_since_epoch().count()));
  fs::create_directories(dir);

  const fs::path figdir = dir / "figures";
  if (run_cmd("'" + cli + "' figures --out '" + figdir.string() + "'") != 0) {
    ok = false;
    detail = "figures subcommand failed";
  }
  const std::array<const char*, 4> denoms{"3", "4", "6", "8"};
  if (ok) {
    for (const char* d : denoms) {
      for (const char* fam : {"S", "T"}) {
        const fs::path f = figdir / ("pi-" + std::string(d) + "-" + fam + ".obj");
        if (!fs::exists(f) || fs::file_size(f) == 0) {
          ok = false;
          detail = "missing figure " + f.filename().string();
        }
      }
    }
  }

  int verified = 0;
  if (ok) {
    for (const char* d : denoms) {
      for (const char* fam : {"spacelike", "timelike"}) {
        const fs::path cfg =
            dir / ("preset-" + std::string(d) + "-" + fam + ".toml");
        std::ofstream out(cfg);
        out << "causal = \"" << fam << "\"\ntheta = \"pi/" << d
            << "\"\ntau = 1\n";
        out.close();
        if (run_cmd("'" + cli + "' verify --config '" + cfg.string() + "'") != 0) {
          ok = false;
          detail = "verify failed for theta = pi/" + std::string(d) + " " + fam;
          break;
        }
        ++verified;
      }
      if (!ok) break;
    }
  }

  const double dt = seconds_since(t0);
  if (ok && dt >= kCliBudget) {
    ok = false;
    detail = "pipeline exceeded the time budget";
  }
  if (ok) {
    detail = "figures wrote 8 meshes and verify passed on " +
             std::to_string(verified) + "/8 presets in " + num(dt) + " s (< " +
             num(kCliBudget) + " s)";
  }
  fs::remove_all(dir);
  report(8, ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  criterion_killing();
  criterion_riemann();
  const std::vector<VerifiedSurface> matrix = run_matrix();
  criterion_family(3, matrix, CausalType::Spacelike, "spacelike");
  criterion_family(4, matrix, CausalType::Timelike, "timelike");
  criterion_shape(matrix);
  criterion_residuals(matrix);
  criterion_profiles();
  criterion_cli(cli);

  if (g_failures) {
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all 8 criteria passed\n");
  return 0;
}
