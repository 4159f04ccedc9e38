#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <utility>

#include "CLI11.hpp"

#include "lhg/config.hpp"
#include "lhg/mesh.hpp"
#include "lhg/verify.hpp"

namespace {

lhg::SurfaceConfig load_with_overrides(const std::string& path,
                                       const std::string& tau_override,
                                       const std::string& res_override) {
  lhg::SurfaceConfig cfg = lhg::load_config(path);
  if (!tau_override.empty()) cfg.tau = lhg::parse_angle(tau_override);
  if (!res_override.empty())
    cfg.resolution = lhg::parse_resolution(res_override);
  return cfg;
}

int run_construct(const std::string& config, const std::string& out,
                  const std::string& format, const std::string& tau_override,
                  const std::string& res_override) {
  const lhg::SurfaceConfig cfg =
      load_with_overrides(config, tau_override, res_override);
  const lhg::HelixImmersion imm = lhg::construct(lhg::make_spec(cfg));
  const lhg::GridMesh mesh =
      lhg::sample_grid(imm, cfg.resolution[0], cfg.resolution[1]);
  if (format == "csv")
    lhg::write_csv(mesh, out);
  else
    lhg::write_obj(mesh, out);
  std::cout << "wrote " << out << " (" << mesh.nu << "x" << mesh.nv
            << " vertices)\n";
  return 0;
}

int run_verify(const std::string& config, const std::string& json_out,
               const std::string& tau_override) {
  const lhg::SurfaceConfig cfg = load_with_overrides(config, tau_override, "");
  const lhg::HelixImmersion imm = lhg::construct(lhg::make_spec(cfg));
  const lhg::VerificationReport rep = lhg::run_verification(imm, cfg.verify);

  std::printf("surface: %s  theta=%.6g  tau=%.6g  c=%.6g\n",
              rep.family.c_str(), rep.theta, rep.tau, rep.c);
  std::printf("targets: nu=%.9g  K=%.9g\n", rep.nu_target, rep.k_target);
  for (const lhg::CheckResult& c : rep.checks) {
    std::printf("[%s] %-16s %11.3e <= %-9.3e  (%zu samples, %zu skipped)%s%s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tol,
                c.samples, c.skipped, c.note.empty() ? "" : "  ",
                c.note.c_str());
  }
  std::printf("overall: %s\n", rep.pass ? "PASS" : "FAIL");

  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    if (!out) throw lhg::IoError("cannot open for writing: " + json_out);
    out << rep.to_json();
    out.flush();
    if (!out) throw lhg::IoError("write failed: " + json_out);
  }
  return rep.pass ? 0 : 1;
}

int run_figures(const std::string& out_dir, const std::string& tau_text,
                const std::string& res_override) {
  const lhg::Tau tau(tau_text.empty() ? 1.0 : lhg::parse_angle(tau_text));
  std::array<std::size_t, 2> res{50, 50};
  if (!res_override.empty()) res = lhg::parse_resolution(res_override);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw lhg::IoError("cannot create directory: " + out_dir);

  const std::array<std::pair<const char*, double>, 4> angles{{
      {"pi-3", std::numbers::pi / 3},
      {"pi-4", std::numbers::pi / 4},
      {"pi-6", std::numbers::pi / 6},
      {"pi-8", std::numbers::pi / 8},
  }};
  for (const auto& [stem, theta] : angles) {
    for (const auto causal :
         {lhg::CausalType::Spacelike, lhg::CausalType::Timelike}) {
      const bool space = causal == lhg::CausalType::Spacelike;
      const lhg::HelixSpec spec = lhg::example_spec(causal, theta, tau);
      const lhg::HelixImmersion imm = lhg::construct(spec);
      const lhg::GridMesh mesh = lhg::sample_grid(imm, res[0], res[1]);
      const fs::path path =
          fs::path(out_dir) / (std::string(stem) + (space ? "-S" : "-T") + ".obj");
      lhg::write_obj(mesh, path.string());
      std::cout << "wrote " << path.string() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "constant-angle spacelike and timelike surfaces in the Lorentzian "
      "Heisenberg group"};
  app.require_subcommand(1);

  auto* c = app.add_subcommand("construct", "sample a surface and write a mesh");
  std::string c_config, c_out, c_format = "obj", c_tau, c_res;
  c->add_option("--config", c_config, "config file (TOML or JSON)")->required();
  c->add_option("--out", c_out, "output mesh path")->required();
  c->add_option("--format", c_format, "mesh format")
      ->check(CLI::IsMember({"obj", "csv"}));
  c->add_option("--tau", c_tau, "override tau");
  c->add_option("--resolution", c_res, "override grid size, NxM");

  auto* vf = app.add_subcommand("verify", "run the invariant suite");
  std::string v_config, v_json, v_tau;
  vf->add_option("--config", v_config, "config file (TOML or JSON)")->required();
  vf->add_option("--json", v_json, "write the JSON report here");
  vf->add_option("--tau", v_tau, "override tau");

  auto* fg = app.add_subcommand("figures", "write the eight preset meshes");
  std::string f_out = ".", f_tau, f_res;
  fg->add_option("--out", f_out, "output directory");
  fg->add_option("--tau", f_tau, "tau for all presets");
  fg->add_option("--resolution", f_res, "override grid size, NxM");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c->parsed()) return run_construct(c_config, c_out, c_format, c_tau, c_res);
    if (vf->parsed()) return run_verify(v_config, v_json, v_tau);
    if (fg->parsed()) return run_figures(f_out, f_tau, f_res);
  } catch (const lhg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
