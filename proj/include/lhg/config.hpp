#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "lhg/helix.hpp"
#include "lhg/verify.hpp"

// Config-file front end: a flat key set accepted both as JSON and as a small
// TOML subset (comments, [section] headers, key = string/number/bool/array).

namespace lhg {

struct SurfaceConfig {
  CausalType causal = CausalType::Spacelike;
  double theta = 1.0;
  double tau = 1.0;
  double c = 0.0;
  EtaKind eta = EtaKind::Example;
  double eta_slope = 1.0;
  double eta_offset = 0.0;
  std::string profile_csv;  // when set, the profile is imported, not integrated
  std::array<double, 2> u_range{0.0, 2.0 * std::numbers::pi};
  std::array<double, 2> v_range{0.0, 2.0 * std::numbers::pi};
  std::array<std::size_t, 2> resolution{50, 50};  // mesh vertices per side
  std::size_t ode_steps = 512;
  VerifyOptions verify;  // [tolerances] section overrides land here
};

// Angles: plain numbers, or "pi", "pi/3", "-pi/8", "3pi/4"
double parse_angle(const std::string& text);

// "NxM" with N, M >= 2
std::array<std::size_t, 2> parse_resolution(const std::string& text);

SurfaceConfig load_config(const std::string& path);
SurfaceConfig parse_config_text(const std::string& text, bool prefer_json);

HelixSpec make_spec(const SurfaceConfig& cfg);

}  // namespace lhg
