#include "rpsim/self_check.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "rpsim/entanglement.hpp"
#include "rpsim/evolve.hpp"
#include "rpsim/hamiltonian.hpp"
#include "rpsim/linalg.hpp"
#include "rpsim/yield.hpp"

namespace rpsim {
namespace {

struct Reporter {
  std::ostream& out;
  bool all_ok = true;

  void result(const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << "\n";
    all_ok = all_ok && ok;
  }
};

Vector random_pure_state(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector psi(4);
  for (int i = 0; i < 4; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  return psi / psi.norm();
}

double trajectory_hermiticity_deviation(const Trajectory& traj) {
  double worst = 0.0;
  for (const Matrix& rho : traj.rho) worst = std::max(worst, max_abs(rho - rho.adjoint()));
  return worst;
}

double trajectory_min_eigenvalue(const Trajectory& traj) {
  double worst = 0.0;
  for (const Matrix& rho : traj.rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    worst = std::min(worst, solver.eigenvalues().minCoeff());
  }
  return worst;
}

void check_projectors(Reporter& rep) {
  const std::vector<std::vector<double>> spin_sets = {{}, {0.5}, {0.5, 1.0}};
  double worst = 0.0;
  bool ranks_ok = true;
  for (const auto& spins : spin_sets) {
    const SpinSpace space = build_space(spins);
    const Matrix q_s = singlet_projector(space);
    const Matrix q_t = triplet_projector(space);
    const Matrix id = Matrix::Identity(space.dim, space.dim);
    worst = std::max(worst, max_abs(q_s + q_t - id));
    worst = std::max(worst, max_abs(q_s * q_t));
    worst = std::max(worst, max_abs(q_s * q_s - q_s));
    worst = std::max(worst, max_abs(q_s - q_s.adjoint()));
    ranks_ok = ranks_ok &&
               std::abs(q_s.trace().real() - space.nuclear_multiplicity) < 1e-12;
  }
  std::ostringstream detail;
  detail << "max deviation " << worst;
  rep.result("projector algebra (Q_S + Q_T = I, Q_S Q_T = 0, Q_S^2 = Q_S, rank M)",
             worst < 1e-12 && ranks_ok, detail.str());
}

void check_trajectories(Reporter& rep) {
  const SpinSpace space = build_space({});
  const Matrix h = build_hamiltonian(space, {1.05, 0.95, {}});
  const Matrix rho0 = singlet_state() * singlet_state().adjoint();

  bool ok = true;
  double worst_herm = 0.0;
  double worst_eig = 0.0;
  for (TheoryKind kind : {TheoryKind::Traditional, TheoryKind::JonesHore, TheoryKind::Kominis}) {
    const MasterEquation me{kind, 0.1, 0.1};
    EvolveOptions opt;
    opt.t_max = 100.0;
    opt.dt = 0.002;
    const Trajectory traj = evolve(rho0, me, h, space, opt);
    worst_herm = std::max(worst_herm, trajectory_hermiticity_deviation(traj));
    worst_eig = std::min(worst_eig, trajectory_min_eigenvalue(traj));
    for (std::size_t i = 0; i < traj.norm_valid_count; ++i) {
      const double qs = traj.observables[i].qs_norm;
      ok = ok && qs > -1e-8 && qs < 1.0 + 1e-8;
    }
    for (std::size_t i = 1; i < traj.times.size(); ++i)
      ok = ok && traj.observables[i].trace <= traj.observables[i - 1].trace + 1e-12;
  }
  std::ostringstream detail;
  detail << "hermiticity " << worst_herm << ", min eigenvalue " << worst_eig;
  rep.result("trajectory Hermiticity/positivity, all three theories",
             ok && worst_herm < 1e-9 && worst_eig > -1e-8, detail.str());
}

void check_concurrence_paths(Reporter& rep) {
  std::mt19937 rng(20240817);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vector psi = random_pure_state(rng);
    const Matrix rho = psi * psi.adjoint();
    worst = std::max(worst, std::abs(concurrence(rho) - concurrence_pure(psi)));
  }
  std::ostringstream detail;
  detail << "max mismatch " << worst << " over 10000 states";
  rep.result("concurrence dual-path agreement on random pure states", worst < 1e-10,
             detail.str());
}

void check_eof_monotone(Reporter& rep) {
  bool ok = entanglement_of_formation(0.0) == 0.0 &&
            std::abs(entanglement_of_formation(1.0) - 1.0) < 1e-12;
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double value = entanglement_of_formation(i / 1000.0);
    ok = ok && value >= prev - 1e-12;
    prev = value;
  }
  rep.result("entanglement of formation monotone in concurrence, E(0)=0, E(1)=1", ok);
}

void check_step_halving(Reporter& rep) {
  const SpinSpace space = build_space({});
  const Matrix h = build_hamiltonian(space, {1.05, 0.95, {}});
  const Matrix rho0 = singlet_state() * singlet_state().adjoint();

  double worst = 0.0;
  for (TheoryKind kind : {TheoryKind::Traditional, TheoryKind::JonesHore, TheoryKind::Kominis}) {
    const MasterEquation me{kind, 0.1, 0.1};
    EvolveOptions coarse;
    coarse.t_max = 50.0;
    coarse.dt = 0.002;
    coarse.store_points = 100;
    EvolveOptions fine = coarse;
    fine.dt = 0.001;
    const Trajectory a = evolve(rho0, me, h, space, coarse);
    const Trajectory b = evolve(rho0, me, h, space, fine);
    for (std::size_t i = 0; i < a.times.size() && i < b.times.size(); ++i) {
      worst = std::max(worst, std::abs(a.observables[i].trace - b.observables[i].trace));
      worst = std::max(worst, std::abs(a.observables[i].qs_norm - b.observables[i].qs_norm));
      worst = std::max(worst,
                       std::abs(a.observables[i].concurrence_norm - b.observables[i].concurrence_norm));
      worst = std::max(worst, std::abs(a.observables[i].eof_norm - b.observables[i].eof_norm));
    }
  }
  std::ostringstream detail;
  detail << "max change " << worst;
  rep.result("step-halving convergence below 1e-8", worst < 1e-8, detail.str());
}

}  // namespace

bool run_self_check(std::ostream& out) {
  Reporter rep{out};
  check_projectors(rep);
  check_trajectories(rep);
  check_concurrence_paths(rep);
  check_eof_monotone(rep);
  check_step_halving(rep);
  out << (rep.all_ok ? "check: all invariants hold\n" : "check: FAILURES above\n");
  return rep.all_ok;
}

}  // namespace rpsim
