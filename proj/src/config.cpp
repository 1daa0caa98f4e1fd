#include "chemowave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chemowave/errors.hpp"
#include "chemowave/waves.hpp"

namespace chemowave {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::string section;
  std::istringstream is{std::string(text)};
  std::string raw;
  for (int line_no = 1; std::getline(is, raw); ++line_no) {
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (!cfg.entries_.emplace(full, trim(line.substr(eq + 1))).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " + full);
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.contains(key); }

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing key " + key);
  used_.insert(key);
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || trim(s.substr(pos)) != "" || !std::isfinite(x)) {
    throw ConfigError("key " + key + ": '" + s + "' is not a finite number");
  }
  return x;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key " + key + ": '" + s + "' is not a boolean");
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (!used_.contains(k)) out.push_back(k);
  }
  return out;
}

namespace {
constexpr std::pair<InitialKind, std::string_view> kKindNames[] = {
    {InitialKind::piecewise_constant, "piecewise_constant"},
    {InitialKind::ramp_h1, "ramp_h1"},
    {InitialKind::exact_wave_plus_bump, "exact_wave_plus_bump"},
    {InitialKind::constant_plus_jump, "constant_plus_jump"},
    {InitialKind::from_file, "from_file"},
};

// Numeric keys accepted per initial kind.
std::vector<std::string> kind_keys(InitialKind k) {
  switch (k) {
    case InitialKind::piecewise_constant:
      return {"jump_at", "u_left", "u_right", "v_left", "v_right"};
    case InitialKind::ramp_h1:
      return {"ramp_start", "ramp_end", "u_left", "u_right", "v_left", "v_right"};
    case InitialKind::exact_wave_plus_bump:
      return {"center", "bump_start", "bump_end", "u_bump", "v_bump"};
    case InitialKind::constant_plus_jump:
      return {"u_base", "v_base", "block_start", "block_end", "u_jump", "v_jump"};
    case InitialKind::from_file:
      return {};
  }
  return {};
}
}  // namespace

std::string_view to_string(InitialKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

InitialKind initial_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown initial kind '" + std::string(name) + "'");
}

double InitialSpec::at(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) {
    throw ConfigError("initial data (" + std::string(to_string(kind)) + ") needs key " + key);
  }
  return it->second;
}

double InitialSpec::at(const std::string& key, double fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

ScenarioConfig scenario_from_config(const KeyValueConfig& kv, const std::filesystem::path& base_dir) {
  ScenarioConfig c;
  c.name = kv.get_string("name", "scenario");
  c.seed_label = kv.get_string("seed_label", c.name);
  c.grid = GridSpec(kv.get_double("grid.x_min"), kv.get_double("grid.x_max"),
                    static_cast<std::size_t>(std::llround(kv.get_double("grid.n_nodes"))));

  const double D = kv.get_double("model.D", 1.0);
  if (kv.has("model.xi")) {
    c.params = ModelParams::from_mu_xi(D, kv.get_double("model.mu", 1.0), kv.get_double("model.xi"));
    if (kv.has("model.chi") &&
        std::abs(kv.get_double("model.chi") - c.params.chi) > 1e-12 * c.params.chi) {
      throw ConfigError("model: chi must equal mu * xi");
    }
  } else {
    c.params = ModelParams::from_chi(D, kv.get_double("model.chi", 1.0), kv.get_double("model.mu", 1.0));
  }

  c.scheme.cfl = kv.get_double("scheme.cfl", 0.4);
  c.scheme.diffusion_theta = kv.get_double("scheme.theta", 0.5);
  c.scheme.t_end = kv.get_double("scheme.t_end");
  c.scheme.snapshot_interval = kv.get_double("scheme.snapshot_interval", c.scheme.t_end > 0 ? c.scheme.t_end : 1.0);
  const std::string policy = kv.get_string("scheme.policy", "parallel");
  if (policy != "serial" && policy != "parallel") throw ConfigError("scheme.policy must be serial or parallel");
  c.scheme.policy = policy == "parallel" ? ExecPolicy::parallel : ExecPolicy::serial;
  c.scheme.validate();

  c.initial.kind = initial_kind_from_string(kv.get_string("initial.kind"));
  for (const auto& key : kind_keys(c.initial.kind)) {
    if (kv.has("initial." + key)) c.initial.values[key] = kv.get_double("initial." + key);
  }
  if (c.initial.kind == InitialKind::exact_wave_plus_bump) {
    c.initial.values["zero_mass"] = kv.get_bool("initial.zero_mass", true) ? 1.0 : 0.0;
  }
  if (c.initial.kind == InitialKind::from_file) {
    std::filesystem::path p = kv.get_string("initial.path");
    c.initial.file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  c.mollify_delta = kv.get_double("mollify_delta", kv.get_double("initial.mollify_delta", 0.0));
  if (c.mollify_delta < 0.0) throw ConfigError("mollify_delta must be >= 0");

  if (kv.has("states.u_minus") || kv.has("states.u_plus") || kv.has("states.v_plus")) {
    AsymptoticStates st;
    st.u_minus = kv.get_double("states.u_minus");
    st.u_plus = kv.get_double("states.u_plus");
    st.v_plus = kv.get_double("states.v_plus");
    st.v_minus = kv.has("states.v_minus")
                     ? kv.get_double("states.v_minus")
                     : complete_states(st.u_minus, st.u_plus, st.v_plus, c.params).v_minus;
    c.declared_states = st;
  }
  if (kv.has("boundary.u_left")) {
    c.boundary = std::make_pair(
        BoundaryValues{kv.get_double("boundary.u_left"), kv.get_double("boundary.v_left")},
        BoundaryValues{kv.get_double("boundary.u_right"), kv.get_double("boundary.v_right")});
  }
  if (kv.has("probe.center")) {
    c.probe = ProbeWindow{kv.get_double("probe.center"), kv.get_double("probe.halfwidth", 5.0)};
  }
  c.reference_run = kv.get_bool("probe.reference_run", false);

  const auto unused = kv.unused_keys();
  if (!unused.empty()) throw ConfigError("unknown config key " + unused.front());
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return scenario_from_config(KeyValueConfig::load(path), path.parent_path());
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out{
      {"name", name},
      {"seed_label", seed_label},
      {"grid.x_min", fmt(grid.x_min())},
      {"grid.x_max", fmt(grid.x_max())},
      {"grid.n_nodes", std::to_string(grid.n_nodes())},
      {"model.D", fmt(params.D)},
      {"model.chi", fmt(params.chi)},
      {"model.mu", fmt(params.mu)},
      {"model.xi", fmt(params.xi)},
      {"scheme.cfl", fmt(scheme.cfl)},
      {"scheme.theta", fmt(scheme.diffusion_theta)},
      {"scheme.t_end", fmt(scheme.t_end)},
      {"scheme.snapshot_interval", fmt(scheme.snapshot_interval)},
      {"scheme.policy", scheme.policy == ExecPolicy::parallel ? "parallel" : "serial"},
      {"initial.kind", std::string(to_string(initial.kind))},
  };
  for (const auto& [k, v] : initial.values) out.emplace_back("initial." + k, fmt(v));
  if (initial.kind == InitialKind::from_file) out.emplace_back("initial.path", initial.file.string());
  out.emplace_back("mollify_delta", fmt(mollify_delta));
  if (declared_states) {
    out.emplace_back("states.u_minus", fmt(declared_states->u_minus));
    out.emplace_back("states.u_plus", fmt(declared_states->u_plus));
    out.emplace_back("states.v_minus", fmt(declared_states->v_minus));
    out.emplace_back("states.v_plus", fmt(declared_states->v_plus));
  }
  if (boundary) {
    out.emplace_back("boundary.u_left", fmt(boundary->first.u));
    out.emplace_back("boundary.v_left", fmt(boundary->first.v));
    out.emplace_back("boundary.u_right", fmt(boundary->second.u));
    out.emplace_back("boundary.v_right", fmt(boundary->second.v));
  }
  if (probe) {
    out.emplace_back("probe.center", fmt(probe->center));
    out.emplace_back("probe.halfwidth", fmt(probe->halfwidth));
  }
  out.emplace_back("probe.reference_run", reference_run ? "true" : "false");
  return out;
}

void ScenarioConfig::apply_axis(const std::string& axis, double value) {
  if (axis == "mollify_delta") {
    if (value < 0.0) throw ConfigError("mollify_delta must be >= 0");
    mollify_delta = value;
  } else if (axis == "n_nodes") {
    grid = GridSpec(grid.x_min(), grid.x_max(), static_cast<std::size_t>(std::llround(value)));
  } else if (axis == "cfl") {
    scheme.cfl = value;
    scheme.validate();
  } else if (axis == "jump_height") {
    switch (initial.kind) {
      case InitialKind::piecewise_constant:
      case InitialKind::ramp_h1: {
        // Keeps the far-field quadruple consistent: v_left is re-completed.
        const double u_right = initial.at("u_right");
        initial.values["u_left"] = u_right + value;
        initial.values["v_left"] =
            complete_states(u_right + value, u_right, initial.at("v_right"), params).v_minus;
        break;
      }
      case InitialKind::constant_plus_jump:
        initial.values["u_jump"] = value;
        break;
      case InitialKind::exact_wave_plus_bump:
        initial.values["u_bump"] = value;
        break;
      case InitialKind::from_file:
        throw ConfigError("jump_height axis does not apply to from_file data");
    }
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "' (mollify_delta, n_nodes, cfl, jump_height)");
  }
}

}  // namespace chemowave
