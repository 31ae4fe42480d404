#pragma once

#include <map>
#include <string>
#include <vector>

#include "rpsim/hamiltonian.hpp"
#include "rpsim/master_equation.hpp"

namespace rpsim {

/// Declarative description of one simulation or sweep run, loaded from a
/// YAML scenario file (one file = one scenario).
struct Scenario {
  std::string name;
  std::vector<double> nuclear_spins;

  // Either fixed Larmor frequencies, or gyromagnetic ratios plus a field.
  bool field_mode = false;
  double omega1 = 0.0, omega2 = 0.0;
  double gamma1_hz = 0.0, gamma2_hz = 0.0, b_gauss = 0.0;
  std::vector<HyperfineCoupling> hyperfine;

  std::vector<TheoryKind> theories;
  double k_s = 0.0, k_t = 0.0;
  KominisLoss kominis_loss = KominisLoss::NonlinearTrace;

  double t_max = 0.0;
  double dt = 0.0;  // 0: default step
  int store_points = 500;
  double trace_floor = 1e-12;

  double entanglement_threshold = 0.01;
  bool time_in_delta_omega = false;    // CSV time column in units of 1/dw
  std::string grid_unit = "absolute";  // "absolute" | "delta-omega" | "gauss"
  std::string output = "out";

  SpinSpace space() const;
  HamiltonianSpec hamiltonian() const;
  HamiltonianSpec hamiltonian_at_field(double b_gauss) const;
  double delta_omega() const;
};

Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");
Scenario load_scenario_file(const std::string& path);
std::string dump_scenario(const Scenario& s);

/// Built-in scenarios compiled into the tool; the same files ship under
/// presets/ for reference.
const std::map<std::string, std::string>& builtin_presets();

/// Path-or-preset-name resolution used by the command line front end.
Scenario resolve_scenario(const std::string& name_or_path);

}  // namespace rpsim
