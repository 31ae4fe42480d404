#include "rpsim/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "rpsim/errors.hpp"
#include "rpsim/yield.hpp"

namespace rpsim {
namespace {

ConfigError at(const std::string& origin, const YAML::Node& node, const std::string& msg) {
  return ConfigError(origin + ": line " + std::to_string(node.Mark().line + 1) + ": " + msg);
}

ConfigError at(const std::string& origin, const std::string& msg) {
  return ConfigError(origin + ": " + msg);
}

TheoryKind parse_theory(const std::string& origin, const YAML::Node& node) {
  const auto s = node.as<std::string>();
  if (s == "traditional") return TheoryKind::Traditional;
  if (s == "joneshore" || s == "jones-hore") return TheoryKind::JonesHore;
  if (s == "kominis") return TheoryKind::Kominis;
  throw at(origin, node, "unknown theory '" + s + "'");
}

template <typename T>
T fetch(const std::string& origin, const YAML::Node& parent, const char* key, T fallback) {
  const YAML::Node node = parent[key];
  if (!node) return fallback;
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw at(origin, node, std::string("cannot parse '") + key + "'");
  }
}

template <typename T>
T demand(const std::string& origin, const YAML::Node& parent, const char* key) {
  const YAML::Node node = parent[key];
  if (!node) throw at(origin, parent, std::string("missing required key '") + key + "'");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw at(origin, node, std::string("cannot parse '") + key + "'");
  }
}

}  // namespace

SpinSpace Scenario::space() const { return build_space(nuclear_spins); }

HamiltonianSpec Scenario::hamiltonian() const {
  return field_mode ? hamiltonian_at_field(b_gauss) : [this] {
    HamiltonianSpec spec;
    spec.omega1 = omega1;
    spec.omega2 = omega2;
    spec.hyperfine = hyperfine;
    return spec;
  }();
}

HamiltonianSpec Scenario::hamiltonian_at_field(double b) const {
  HamiltonianSpec spec = zeeman_at_field({gamma1_hz, gamma2_hz}, b);
  spec.hyperfine = hyperfine;
  return spec;
}

double Scenario::delta_omega() const { return hamiltonian().delta_omega(); }

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(origin + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw at(origin, "scenario must be a mapping");

  Scenario s;
  s.name = demand<std::string>(origin, root, "name");

  if (const YAML::Node space = root["space"]) {
    s.nuclear_spins = fetch<std::vector<double>>(origin, space, "nuclear_spins", {});
    try {
      build_space(s.nuclear_spins);
    } catch (const ValidationError& e) {
      throw at(origin, space, e.what());
    }
  }

  const YAML::Node ham = root["hamiltonian"];
  if (!ham) throw at(origin, root, "missing required key 'hamiltonian'");
  if (ham["gamma1_hz"] || ham["gamma2_hz"] || ham["b_gauss"]) {
    s.field_mode = true;
    s.gamma1_hz = demand<double>(origin, ham, "gamma1_hz");
    s.gamma2_hz = demand<double>(origin, ham, "gamma2_hz");
    s.b_gauss = demand<double>(origin, ham, "b_gauss");
    if (ham["omega1"] || ham["omega2"])
      throw at(origin, ham, "give either omega1/omega2 or gamma1_hz/gamma2_hz/b_gauss");
  } else {
    s.omega1 = demand<double>(origin, ham, "omega1");
    s.omega2 = demand<double>(origin, ham, "omega2");
  }
  if (const YAML::Node hf = ham["hyperfine"]) {
    if (!hf.IsSequence()) throw at(origin, hf, "'hyperfine' must be a list");
    for (const auto& entry : hf) {
      HyperfineCoupling c;
      c.electron = demand<int>(origin, entry, "electron");
      c.nucleus = demand<int>(origin, entry, "nucleus");
      c.a = demand<double>(origin, entry, "a");
      if (c.electron != 1 && c.electron != 2)
        throw at(origin, entry, "hyperfine electron index must be 1 or 2");
      if (c.nucleus < 0 || c.nucleus >= static_cast<int>(s.nuclear_spins.size()))
        throw at(origin, entry,
                 "hyperfine nucleus index " + std::to_string(c.nucleus) +
                     " out of range for " + std::to_string(s.nuclear_spins.size()) +
                     " nuclei");
      s.hyperfine.push_back(c);
    }
  }

  const YAML::Node reaction = root["reaction"];
  if (!reaction) throw at(origin, root, "missing required key 'reaction'");
  const YAML::Node theories = reaction["theories"];
  if (!theories || !theories.IsSequence() || theories.size() == 0)
    throw at(origin, reaction, "'theories' must name at least one theory");
  for (const auto& th : theories) s.theories.push_back(parse_theory(origin, th));
  s.k_s = demand<double>(origin, reaction, "k_s");
  s.k_t = demand<double>(origin, reaction, "k_t");
  if (s.k_s < 0.0 || s.k_t < 0.0)
    throw at(origin, reaction, "recombination rates must be non-negative");
  const auto loss = fetch<std::string>(origin, reaction, "kominis_loss", "nonlinear-trace");
  if (loss == "nonlinear-trace")
    s.kominis_loss = KominisLoss::NonlinearTrace;
  else if (loss == "projective-linear")
    s.kominis_loss = KominisLoss::ProjectiveLinear;
  else
    throw at(origin, reaction, "unknown kominis_loss '" + loss + "'");

  const YAML::Node integ = root["integration"];
  if (!integ) throw at(origin, root, "missing required key 'integration'");
  s.t_max = demand<double>(origin, integ, "t_max");
  if (s.t_max <= 0.0) throw at(origin, integ, "t_max must be positive");
  s.dt = fetch<double>(origin, integ, "dt", 0.0);
  if (s.dt < 0.0) throw at(origin, integ, "dt must be positive (or omitted)");
  s.store_points = fetch<int>(origin, integ, "store_points", 500);
  if (s.store_points < 2) throw at(origin, integ, "store_points must be at least 2");
  s.trace_floor = fetch<double>(origin, integ, "trace_floor", 1e-12);
  if (s.trace_floor <= 0.0) throw at(origin, integ, "trace_floor must be positive");

  if (const YAML::Node analysis = root["analysis"]) {
    s.entanglement_threshold =
        fetch<double>(origin, analysis, "entanglement_threshold", 0.01);
    if (s.entanglement_threshold <= 0.0 || s.entanglement_threshold >= 1.0)
      throw at(origin, analysis, "entanglement_threshold must lie in (0, 1)");
    const auto axis = fetch<std::string>(origin, analysis, "time_axis", "absolute");
    if (axis == "delta_omega")
      s.time_in_delta_omega = true;
    else if (axis != "absolute")
      throw at(origin, analysis, "time_axis must be 'absolute' or 'delta_omega'");
  }
  if (s.time_in_delta_omega && s.delta_omega() == 0.0)
    throw at(origin, root, "time_axis delta_omega needs a nonzero delta omega");

  if (const YAML::Node yield = root["yield"]) {
    s.grid_unit = fetch<std::string>(origin, yield, "grid_unit", "absolute");
    if (s.grid_unit != "absolute" && s.grid_unit != "delta-omega" && s.grid_unit != "gauss")
      throw at(origin, yield, "grid_unit must be absolute, delta-omega or gauss");
  }

  s.output = fetch<std::string>(origin, root, "output", s.name);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << stream.rdbuf();
  return parse_scenario(text.str(), path);
}

std::string dump_scenario(const Scenario& s) {
  YAML::Emitter em;
  em.SetDoublePrecision(17);
  em << YAML::BeginMap;
  em << YAML::Key << "name" << YAML::Value << s.name;
  em << YAML::Key << "space" << YAML::Value << YAML::BeginMap;
  em << YAML::Key << "nuclear_spins" << YAML::Value << YAML::Flow << s.nuclear_spins;
  em << YAML::EndMap;

  em << YAML::Key << "hamiltonian" << YAML::Value << YAML::BeginMap;
  if (s.field_mode) {
    em << YAML::Key << "gamma1_hz" << YAML::Value << s.gamma1_hz;
    em << YAML::Key << "gamma2_hz" << YAML::Value << s.gamma2_hz;
    em << YAML::Key << "b_gauss" << YAML::Value << s.b_gauss;
  } else {
    em << YAML::Key << "omega1" << YAML::Value << s.omega1;
    em << YAML::Key << "omega2" << YAML::Value << s.omega2;
  }
  if (!s.hyperfine.empty()) {
    em << YAML::Key << "hyperfine" << YAML::Value << YAML::BeginSeq;
    for (const auto& c : s.hyperfine) {
      em << YAML::Flow << YAML::BeginMap;
      em << YAML::Key << "electron" << YAML::Value << c.electron;
      em << YAML::Key << "nucleus" << YAML::Value << c.nucleus;
      em << YAML::Key << "a" << YAML::Value << c.a;
      em << YAML::EndMap;
    }
    em << YAML::EndSeq;
  }
  em << YAML::EndMap;

  em << YAML::Key << "reaction" << YAML::Value << YAML::BeginMap;
  em << YAML::Key << "theories" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (TheoryKind kind : s.theories) em << theory_name(kind);
  em << YAML::EndSeq;
  em << YAML::Key << "k_s" << YAML::Value << s.k_s;
  em << YAML::Key << "k_t" << YAML::Value << s.k_t;
  em << YAML::Key << "kominis_loss" << YAML::Value
     << (s.kominis_loss == KominisLoss::NonlinearTrace ? "nonlinear-trace"
                                                       : "projective-linear");
  em << YAML::EndMap;

  em << YAML::Key << "integration" << YAML::Value << YAML::BeginMap;
  em << YAML::Key << "t_max" << YAML::Value << s.t_max;
  if (s.dt > 0.0) em << YAML::Key << "dt" << YAML::Value << s.dt;
  em << YAML::Key << "store_points" << YAML::Value << s.store_points;
  em << YAML::Key << "trace_floor" << YAML::Value << s.trace_floor;
  em << YAML::EndMap;

  em << YAML::Key << "analysis" << YAML::Value << YAML::BeginMap;
  em << YAML::Key << "entanglement_threshold" << YAML::Value << s.entanglement_threshold;
  em << YAML::Key << "time_axis" << YAML::Value
     << (s.time_in_delta_omega ? "delta_omega" : "absolute");
  em << YAML::EndMap;

  em << YAML::Key << "yield" << YAML::Value << YAML::BeginMap;
  em << YAML::Key << "grid_unit" << YAML::Value << s.grid_unit;
  em << YAML::EndMap;

  em << YAML::Key << "output" << YAML::Value << s.output;
  em << YAML::EndMap;
  return std::string(em.c_str()) + "\n";
}

const std::map<std::string, std::string>& builtin_presets() {
  static const std::map<std::string, std::string> presets = {
      {"fig2a", R"(# Reference run without recombination: undamped S-T0 beating.
name: fig2a
space:
  nuclear_spins: []
hamiltonian:
  omega1: 1.05
  omega2: 0.95
reaction:
  theories: [traditional]
  k_s: 0.0
  k_t: 0.0
integration:
  t_max: 500.0
  dt: 0.002
  store_points: 500
analysis:
  entanglement_threshold: 0.01
  time_axis: delta_omega
output: fig2a
)"},
      {"fig2bc", R"(# Reaction on: k_s = k_t = delta omega, all three theories side by side.
name: fig2bc
space:
  nuclear_spins: []
hamiltonian:
  omega1: 1.05
  omega2: 0.95
reaction:
  theories: [traditional, joneshore, kominis]
  k_s: 0.1
  k_t: 0.1
integration:
  t_max: 500.0
  dt: 0.002
  store_points: 500
  trace_floor: 1.0e-25
analysis:
  entanglement_threshold: 0.01
  time_axis: delta_omega
output: fig2bc
)"},
      {"yield-dg", R"(# Delta-g pair for yield sweeps; grid points are in units of delta omega.
name: yield-dg
space:
  nuclear_spins: []
hamiltonian:
  omega1: 1.05
  omega2: 0.95
reaction:
  theories: [traditional]
  k_s: 0.1
  k_t: 0.1
integration:
  t_max: 500.0
  store_points: 500
yield:
  grid_unit: delta-omega
output: yield-dg
)"}};
  return presets;
}

Scenario resolve_scenario(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return load_scenario_file(name_or_path);
  const auto& presets = builtin_presets();
  if (const auto it = presets.find(name_or_path); it != presets.end())
    return parse_scenario(it->second, "preset:" + name_or_path);
  throw ConfigError("no scenario file or preset named '" + name_or_path + "'");
}

}  // namespace rpsim
