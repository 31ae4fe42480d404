// Command line front end: scenario simulations, yield sweeps, sensitivity
// estimates and the built-in invariant suite.

#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rpsim/csv.hpp"
#include "rpsim/entanglement.hpp"
#include "rpsim/errors.hpp"
#include "rpsim/evolve.hpp"
#include "rpsim/scenario.hpp"
#include "rpsim/self_check.hpp"
#include "rpsim/sensitivity.hpp"
#include "rpsim/yield.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rpsim;

constexpr double kYieldOracleTolerance = 1e-4;

fs::path output_directory(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("RPSIM_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

struct KindRun {
  TheoryKind kind;
  Trajectory traj;
  std::optional<double> lifetime;
  std::exception_ptr error;
};

int run_simulate(const std::string& scenario_arg, const std::string& dump_path,
                 const std::string& out_dir_flag) {
  const Scenario sc = resolve_scenario(scenario_arg);
  if (!dump_path.empty()) write_file(dump_path, dump_scenario(sc));

  const SpinSpace space = sc.space();
  const Matrix h = build_hamiltonian(space, sc.hamiltonian());
  const Matrix rho0 = singlet_mixed_nuclear_state(space);
  const double time_scale = sc.time_in_delta_omega ? std::abs(sc.delta_omega()) : 1.0;

  EvolveOptions opt;
  opt.t_max = sc.t_max;
  opt.dt = sc.dt;
  opt.store_points = sc.store_points;
  opt.trace_floor = sc.trace_floor;

  std::vector<KindRun> runs;
  runs.reserve(sc.theories.size());
  for (TheoryKind kind : sc.theories) runs.push_back({kind, {}, std::nullopt, nullptr});

  // Independent trajectories; one worker per theory kind.
  std::vector<std::thread> workers;
  for (KindRun& run : runs) {
    workers.emplace_back([&, kind = run.kind]() {
      try {
        const MasterEquation me{kind, sc.k_s, sc.k_t, sc.kominis_loss};
        run.traj = evolve(rho0, me, h, space, opt);
        run.lifetime = entanglement_lifetime(run.traj, sc.entanglement_threshold);
      } catch (...) {
        run.error = std::current_exception();
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  for (const KindRun& run : runs)
    if (run.error) std::rethrow_exception(run.error);

  const fs::path dir = output_directory(out_dir_flag);
  fs::create_directories(dir);
  for (const KindRun& run : runs) {
    const fs::path path = dir / (sc.output + "_" + theory_name(run.kind) + ".csv");
    write_file(path.string(), simulation_csv(run.traj, time_scale));
    std::cout << "wrote " << path.string() << " (" << run.traj.norm_valid_count
              << " rows)\n";
    std::cout << "  entanglement lifetime (threshold "
              << format_sci(sc.entanglement_threshold, 4) << "): ";
    if (run.lifetime)
      std::cout << format_sci(*run.lifetime * time_scale, 4)
                << (sc.time_in_delta_omega ? " (units of 1/delta omega)\n" : "\n");
    else
      std::cout << "none\n";
  }
  return 0;
}

int run_yield(const std::string& scenario_arg, const std::vector<double>& grid,
              const std::string& mode, const std::string& out_dir_flag) {
  const Scenario sc = resolve_scenario(scenario_arg);
  if (grid.empty()) throw ConfigError("--grid must name at least one point");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw ConfigError("--grid must be strictly ascending");
  if (mode == "b" && sc.grid_unit == "delta-omega")
    throw ConfigError("a B-field sweep takes its grid in gauss, not delta-omega units");

  const SpinSpace space = sc.space();
  const Matrix q_s = singlet_projector(space);
  const Matrix rho0 = singlet_mixed_nuclear_state(space);
  const int m = space.nuclear_multiplicity;

  std::vector<YieldRow> rows(grid.size());
  const auto run_point = [&](std::size_t i) {
    double k = sc.k_s;
    Matrix h;
    if (mode == "k") {
      k = sc.grid_unit == "delta-omega" ? grid[i] * std::abs(sc.delta_omega()) : grid[i];
      h = build_hamiltonian(space, sc.hamiltonian());
    } else {  // field sweep
      if (!sc.field_mode)
        throw ConfigError("a B-field sweep needs gamma1_hz/gamma2_hz in the scenario");
      if (sc.k_s != sc.k_t)
        throw ConfigError("yield sweeps assume equal recombination rates");
      h = build_hamiltonian(space, sc.hamiltonian_at_field(grid[i]));
    }
    const YieldResult eigen = singlet_yield_eigenbasis(h, q_s, k, m);
    const YieldResult time =
        singlet_yield_timedomain(rho0, {TheoryKind::Traditional, k, k}, h, q_s);
    rows[i] = {grid[i], eigen.y_s, time.y_s, std::abs(eigen.y_s - time.y_s)};
  };

  // Grid points are independent; chunk them across a few workers.
  const std::size_t n_workers =
      std::min<std::size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < grid.size(); i += n_workers) run_point(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);

  const fs::path dir = output_directory(out_dir_flag);
  fs::create_directories(dir);
  const fs::path path = dir / (sc.output + "_yield.csv");
  write_file(path.string(), yield_csv(rows));
  std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";

  bool disagreement = false;
  for (const YieldRow& row : rows) {
    if (row.abs_diff >= kYieldOracleTolerance) {
      disagreement = true;
      std::cerr << "yield oracle disagreement at " << format_sci(row.x, 4)
                << ": eigenbasis " << format_sci(row.y_eigen, 9) << " vs time-domain "
                << format_sci(row.y_time, 9) << "\n";
    }
  }
  if (disagreement) {
    std::cerr << "error: eigenbasis and time-domain yields differ beyond "
              << format_sci(kYieldOracleTolerance, 4) << "\n";
    return 2;
  }
  return 0;
}

struct SensitivityArgs {
  std::optional<double> n0, t_r, tau, snr, t_e, dte_db, delta_o, do_db;
  double gamma = kElectronGammaHzPerGauss;
};

int run_sensitivity(const SensitivityArgs& args) {
  std::ostringstream table;
  bool any = false;

  SensitivityInput in;
  in.gamma = args.gamma;
  if (args.n0) in.n0 = *args.n0;
  if (args.t_r) in.t_r = *args.t_r;
  if (args.tau) in.tau = *args.tau;
  if (args.snr) in.snr = *args.snr;

  if (args.n0 && args.t_r && args.tau) {
    table << "Eq. (1) shot-noise limit      " << format_sci(shot_noise_limit(in), 4)
          << " G\n";
    any = true;
  }
  if (args.snr && args.t_r) {
    table << "Eq. (2) SNR limit             " << format_sci(snr_limit(in), 4) << " G\n";
    any = true;
    if (args.n0 && !snr_within_shot_noise(in))
      std::cerr << "warning: S/N exceeds sqrt(N0); outside the shot-noise regime\n";
  }
  if (args.delta_o && args.do_db) {
    const double value = observable_sensitivity(*args.delta_o, *args.do_db);
    table << "Eq. (3) observable limit      ";
    if (std::isinf(value))
      table << "INF (no field dependence)\n";
    else
      table << format_sci(value, 4) << " G\n";
    any = true;
  }
  if (args.t_e && args.dte_db && args.snr && args.t_r) {
    const double value = entanglement_lifetime_sensitivity(in, *args.t_e, *args.dte_db);
    table << "Eq. (4) lifetime limit        ";
    if (std::isinf(value))
      table << "INF (no field dependence)\n";
    else
      table << format_sci(value, 4) << " G\n";
    table << "        delta T_E             "
          << format_sci(lifetime_precision(*args.t_e, in.t_r, in.snr), 4) << " s\n";
    any = true;
  }
  if (args.t_e && args.dte_db) {
    const BoundCheckResult bound = bound_check(*args.t_e, *args.dte_db, args.gamma);
    table << "bound   |dT_E/dB| <= gamma T_E^2: "
          << (bound.satisfied ? "satisfied" : "VIOLATED") << " (ratio "
          << format_sci(bound.ratio, 4) << ")\n";
    any = true;
  }

  if (!any) {
    std::cerr << "error: no computable estimate; supply --n0/--tr/--tau, --snr/--tr, "
                 "--delta-o/--do-db, or --te/--dte-db\n";
    return 1;
  }
  std::cout << table.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-selective radical-pair reaction simulator and sensitivity calculator"};
  app.require_subcommand(1);

  std::string scenario_arg, dump_path, out_dir;
  auto* simulate = app.add_subcommand(
      "simulate", "integrate a scenario; one CSV per theory kind");
  simulate->add_option("config", scenario_arg, "scenario file or preset name")->required();
  simulate->add_option("--dump-config", dump_path, "write the parsed scenario back out");
  simulate->add_option("--out-dir", out_dir, "output directory (else RPSIM_OUTPUT_DIR)");

  std::vector<double> grid;
  std::string sweep_mode = "k";
  auto* yield = app.add_subcommand(
      "yield", "sweep the singlet yield with both calculators");
  yield->add_option("config", scenario_arg, "scenario file or preset name")->required();
  yield->add_option("--grid", grid, "ascending sweep grid")->required()->delimiter(',');
  yield->add_option("--mode", sweep_mode, "sweep variable: k or b")
      ->check(CLI::IsMember({"k", "b"}));
  yield->add_option("--out-dir", out_dir, "output directory (else RPSIM_OUTPUT_DIR)");

  SensitivityArgs sens;
  auto* sensitivity =
      app.add_subcommand("sensitivity", "magnetic sensitivity estimates");
  double n0 = 0, t_r = 0, tau = 0, snr = 0, t_e = 0, dte_db = 0, delta_o = 0, do_db = 0;
  auto* n0_opt = sensitivity->add_option("--n0", n0, "initial pair count");
  auto* tr_opt = sensitivity->add_option("--tr", t_r, "reaction time, s");
  auto* tau_opt = sensitivity->add_option("--tau", tau, "total measurement time, s");
  auto* snr_opt = sensitivity->add_option("--snr", snr, "signal-to-noise ratio");
  auto* te_opt = sensitivity->add_option("--te", t_e, "entanglement lifetime, s");
  auto* dte_opt = sensitivity->add_option("--dte-db", dte_db, "dT_E/dB, s/G");
  auto* do_opt = sensitivity->add_option("--delta-o", delta_o, "observable precision");
  auto* dodb_opt = sensitivity->add_option("--do-db", do_db, "dO/dB, 1/G");
  sensitivity->add_option("--gamma", sens.gamma, "gyromagnetic ratio, Hz/G");

  auto* check = app.add_subcommand("check", "run the built-in invariant suite");

  try {
    app.parse(argc, argv);

    if (simulate->parsed()) return run_simulate(scenario_arg, dump_path, out_dir);
    if (yield->parsed()) return run_yield(scenario_arg, grid, sweep_mode, out_dir);
    if (sensitivity->parsed()) {
      if (n0_opt->count()) sens.n0 = n0;
      if (tr_opt->count()) sens.t_r = t_r;
      if (tau_opt->count()) sens.tau = tau;
      if (snr_opt->count()) sens.snr = snr;
      if (te_opt->count()) sens.t_e = t_e;
      if (dte_opt->count()) sens.dte_db = dte_db;
      if (do_opt->count()) sens.delta_o = delta_o;
      if (dodb_opt->count()) sens.do_db = do_db;
      return run_sensitivity(sens);
    }
    if (check->parsed()) return run_self_check(std::cout) ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
