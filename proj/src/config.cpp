#include "lhg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace lhg {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool parse_number(const std::string& s, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

struct RawValue {
  enum class Kind { Str, Num, Bool, List } kind = Kind::Str;
  std::string str;
  double num = 0;
  bool flag = false;
  std::vector<double> list;
};

using RawMap = std::map<std::string, RawValue>;

RawValue parse_toml_value(const std::string& raw, int lineno) {
  RawValue v;
  if (raw.size() >= 2 && raw.front() == '"') {
    if (raw.back() != '"')
      throw ParseError("config line " + std::to_string(lineno) +
                       ": unterminated string");
    v.kind = RawValue::Kind::Str;
    v.str = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = RawValue::Kind::Bool;
    v.flag = raw == "true";
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']')
      throw ParseError("config line " + std::to_string(lineno) +
                       ": unterminated array");
    v.kind = RawValue::Kind::List;
    std::istringstream in(raw.substr(1, raw.size() - 2));
    std::string cell;
    while (std::getline(in, cell, ',')) {
      double x;
      if (!parse_number(trim(cell), x))
        throw ParseError("config line " + std::to_string(lineno) +
                         ": arrays may hold numbers only");
      v.list.push_back(x);
    }
    return v;
  }
  if (parse_number(raw, v.num)) {
    v.kind = RawValue::Kind::Num;
    return v;
  }
  // bare word: treated as a string so `theta = pi/3` works unquoted
  v.kind = RawValue::Kind::Str;
  v.str = raw;
  return v;
}

RawMap parse_toml(const std::string& text) {
  RawMap out;
  std::istringstream in(text);
  std::string line, prefix;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool quoted = false;
    std::string kept;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      kept.push_back(ch);
    }
    kept = trim(kept);
    if (kept.empty()) continue;
    if (kept.front() == '[') {
      if (kept.back() != ']')
        throw ParseError("config line " + std::to_string(lineno) +
                         ": bad section header");
      const std::string name = trim(kept.substr(1, kept.size() - 2));
      if (name.empty())
        throw ParseError("config line " + std::to_string(lineno) +
                         ": empty section name");
      prefix = name + ".";
      continue;
    }
    const auto eq = kept.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    const std::string key = trim(kept.substr(0, eq));
    const std::string val = trim(kept.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    out[prefix + key] = parse_toml_value(val, lineno);
  }
  return out;
}

RawValue to_raw(const nlohmann::json& j) {
  RawValue v;
  if (j.is_string()) {
    v.kind = RawValue::Kind::Str;
    v.str = j.get<std::string>();
  } else if (j.is_boolean()) {
    v.kind = RawValue::Kind::Bool;
    v.flag = j.get<bool>();
  } else if (j.is_number()) {
    v.kind = RawValue::Kind::Num;
    v.num = j.get<double>();
  } else if (j.is_array()) {
    v.kind = RawValue::Kind::List;
    for (const auto& e : j) {
      if (!e.is_number())
        throw ParseError("config: arrays may hold numbers only");
      v.list.push_back(e.get<double>());
    }
  } else {
    throw ParseError("config: unsupported value type");
  }
  return v;
}

RawMap flatten_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  RawMap out;
  for (const auto& [key, val] : j.items()) {
    if (val.is_object()) {
      for (const auto& [k2, v2] : val.items()) out[key + "." + k2] = to_raw(v2);
    } else {
      out[key] = to_raw(val);
    }
  }
  return out;
}

double need_num(const RawValue& v, const std::string& key) {
  if (v.kind != RawValue::Kind::Num)
    throw ParseError("config: " + key + " must be a number");
  return v.num;
}

double need_angle(const RawValue& v, const std::string& key) {
  if (v.kind == RawValue::Kind::Num) return v.num;
  if (v.kind == RawValue::Kind::Str) return parse_angle(v.str);
  throw ParseError("config: " + key + " must be a number or an angle string");
}

std::size_t need_count(const RawValue& v, const std::string& key,
                       std::size_t lo) {
  const double x = need_num(v, key);
  if (!(x >= static_cast<double>(lo)) || x != std::floor(x))
    throw ParseError("config: " + key + " must be an integer >= " +
                     std::to_string(lo));
  return static_cast<std::size_t>(x);
}

std::array<double, 2> need_range(const RawValue& v, const std::string& key) {
  if (v.kind != RawValue::Kind::List || v.list.size() != 2)
    throw ParseError("config: " + key + " must be [lo, hi]");
  if (!(v.list[1] > v.list[0]))
    throw InvalidSpec("config: " + key + " must satisfy lo < hi");
  return {v.list[0], v.list[1]};
}

SurfaceConfig apply(const RawMap& raw) {
  SurfaceConfig cfg;
  for (const auto& [key, v] : raw) {
    if (key == "causal") {
      const std::string s = lower(v.str);
      if (v.kind != RawValue::Kind::Str || (s != "spacelike" && s != "timelike"))
        throw ParseError("config: causal must be \"spacelike\" or \"timelike\"");
      cfg.causal = s == "spacelike" ? CausalType::Spacelike : CausalType::Timelike;
    } else if (key == "theta") {
      cfg.theta = need_angle(v, key);
    } else if (key == "tau") {
      cfg.tau = need_angle(v, key);
    } else if (key == "c") {
      cfg.c = need_angle(v, key);
    } else if (key == "eta") {
      const std::string s = lower(v.str);
      if (v.kind != RawValue::Kind::Str)
        throw ParseError("config: eta must be a string preset");
      if (s == "example")
        cfg.eta = EtaKind::Example;
      else if (s == "linear")
        cfg.eta = EtaKind::Linear;
      else if (s == "csv")
        cfg.eta = EtaKind::Csv;
      else
        throw ParseError("config: eta must be example, linear, or csv");
    } else if (key == "eta_slope") {
      cfg.eta_slope = need_num(v, key);
    } else if (key == "eta_offset") {
      cfg.eta_offset = need_num(v, key);
    } else if (key == "profile_csv") {
      if (v.kind != RawValue::Kind::Str || v.str.empty())
        throw ParseError("config: profile_csv must be a path");
      cfg.profile_csv = v.str;
      cfg.eta = EtaKind::Csv;
    } else if (key == "u_range") {
      cfg.u_range = need_range(v, key);
    } else if (key == "v_range") {
      cfg.v_range = need_range(v, key);
    } else if (key == "resolution") {
      if (v.kind == RawValue::Kind::Str) {
        cfg.resolution = parse_resolution(v.str);
      } else if (v.kind == RawValue::Kind::List && v.list.size() == 2) {
        for (double x : v.list)
          if (!(x >= 2) || x != std::floor(x))
            throw ParseError("config: resolution entries must be integers >= 2");
        cfg.resolution = {static_cast<std::size_t>(v.list[0]),
                          static_cast<std::size_t>(v.list[1])};
      } else {
        throw ParseError("config: resolution must be [n, m] or \"NxM\"");
      }
    } else if (key == "ode_steps") {
      cfg.ode_steps = need_count(v, key, 2);
    } else if (key == "tolerances.angle") {
      cfg.verify.angle_tol = need_num(v, key);
    } else if (key == "tolerances.frame") {
      cfg.verify.frame_tol = need_num(v, key);
    } else if (key == "tolerances.curvature") {
      cfg.verify.curvature_tol = need_num(v, key);
    } else if (key == "tolerances.shape") {
      cfg.verify.shape_tol = need_num(v, key);
    } else if (key == "tolerances.residual") {
      cfg.verify.residual_tol = need_num(v, key);
    } else if (key == "tolerances.lambda_match") {
      cfg.verify.lambda_match_tol = need_num(v, key);
    } else if (key == "tolerances.lambda_ode") {
      cfg.verify.lambda_ode_tol = need_num(v, key);
    } else if (key == "tolerances.profile") {
      cfg.verify.profile_tol = need_num(v, key);
    } else if (key == "tolerances.killing") {
      cfg.verify.killing_tol = need_num(v, key);
    } else if (key == "tolerances.fd_step") {
      cfg.verify.tol.fd_step = need_num(v, key);
    } else if (key == "tolerances.curvature_step") {
      cfg.verify.tol.curvature_step = need_num(v, key);
    } else if (key == "tolerances.lambda_step") {
      cfg.verify.tol.lambda_step = need_num(v, key);
    } else if (key == "tolerances.outer_step") {
      cfg.verify.tol.outer_step = need_num(v, key);
    } else if (key == "tolerances.fd_mask_rel") {
      cfg.verify.fd_mask_rel = need_num(v, key);
    } else if (key == "tolerances.nu_mask_rel") {
      cfg.verify.nu_mask_rel = need_num(v, key);
    } else if (key == "tolerances.grid_u") {
      cfg.verify.grid_u = need_count(v, key, 2);
    } else if (key == "tolerances.grid_v") {
      cfg.verify.grid_v = need_count(v, key, 2);
    } else if (key == "tolerances.n_random") {
      cfg.verify.n_random = need_count(v, key, 1);
    } else if (key == "tolerances.seed") {
      cfg.verify.seed = static_cast<std::uint64_t>(need_count(v, key, 0));
    } else {
      throw ParseError("config: unknown key: " + key);
    }
  }
  if (!std::isfinite(cfg.theta)) throw InvalidSpec("config: theta must be finite");
  cfg.verify.tol.validate();
  return cfg;
}

}  // namespace

double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  double plain;
  if (parse_number(s, plain)) return plain;

  std::size_t i = 0;
  double sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  std::size_t j = i;
  while (j < s.size() &&
         (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.'))
    ++j;
  double mult = 1;
  if (j > i && !parse_number(s.substr(i, j - i), mult))
    throw ParseError("bad angle: " + text);
  i = j;
  if (i < s.size() && s[i] == '*') ++i;
  if (s.compare(i, 2, "pi") != 0) throw ParseError("bad angle: " + text);
  i += 2;
  double den = 1;
  if (i < s.size()) {
    if (s[i] != '/' || !parse_number(trim(s.substr(i + 1)), den) || den == 0)
      throw ParseError("bad angle: " + text);
  }
  return sign * mult * std::numbers::pi / den;
}

std::array<std::size_t, 2> parse_resolution(const std::string& text) {
  const std::string s = trim(text);
  const auto x = s.find_first_of("xX");
  double n, m;
  if (x == std::string::npos || !parse_number(trim(s.substr(0, x)), n) ||
      !parse_number(trim(s.substr(x + 1)), m))
    throw ParseError("resolution must look like NxM: " + text);
  if (!(n >= 2) || !(m >= 2) || n != std::floor(n) || m != std::floor(m))
    throw ParseError("resolution sides must be integers >= 2: " + text);
  return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
}

SurfaceConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool looks_json = (first != std::string::npos && text[first] == '{');
  const bool named_json =
      path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return parse_config_text(text, looks_json || named_json);
}

SurfaceConfig parse_config_text(const std::string& text, bool prefer_json) {
  return apply(prefer_json ? flatten_json(text) : parse_toml(text));
}

HelixSpec make_spec(const SurfaceConfig& cfg) {
  const Tau tau(cfg.tau);
  HelixSpec s;
  s.causal = cfg.causal;
  s.theta = cfg.theta;
  s.tau = tau;
  s.c = cfg.c;
  s.u_range = cfg.u_range;
  s.v_range = cfg.v_range;
  if (cfg.eta == EtaKind::Csv) {
    if (cfg.profile_csv.empty())
      throw InvalidSpec("config: eta = csv needs profile_csv");
    s.profile = profile_from_csv(cfg.profile_csv);
    s.v_range = {std::max(cfg.v_range[0], s.profile.v0),
                 std::min(cfg.v_range[1], s.profile.v1)};
    if (!(s.v_range[1] > s.v_range[0]))
      throw InvalidSpec("config: v_range does not overlap the imported profile");
  } else if (cfg.eta == EtaKind::Linear) {
    const Eta e = eta_linear(cfg.eta_slope, cfg.eta_offset);
    s.profile = profile_from_eta(cfg.causal, cfg.theta, tau, e, cfg.c,
                                 cfg.v_range[0], cfg.v_range[1], cfg.ode_steps);
    s.eta = e;
  } else {
    s.profile =
        example_profile(cfg.causal, cfg.theta, tau, cfg.v_range[0], cfg.v_range[1]);
    s.eta = eta_example(cfg.causal, cfg.theta, tau, cfg.c);
  }
  return s;
}

}  // namespace lhg
