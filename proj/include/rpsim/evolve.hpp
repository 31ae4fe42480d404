#pragma once

#include "rpsim/master_equation.hpp"
#include "rpsim/spin_space.hpp"
#include "rpsim/trajectory.hpp"

namespace rpsim {

struct EvolveOptions {
  double t_max = 0.0;
  double dt = 0.0;  // <= 0 selects default_step
  int store_points = 500;
  double trace_floor = 1e-12;
  bool compute_entanglement = true;
};

/// Default step 1/(200 max(|H|, k_s, k_t)), |H| the spectral radius.
double default_step(const Matrix& h, const MasterEquation& me);

/// Fixed-step classical RK4 integration of d rho/dt = -i[H,rho] + L(rho).
/// Snapshots are recorded on an even stride chosen to give roughly
/// store_points records; observables are evaluated on the normalized state
/// (entanglement on its nuclear-traced 4x4 reduction).
Trajectory evolve(const Matrix& rho0, const MasterEquation& me, const Matrix& h,
                  const SpinSpace& space, const EvolveOptions& opt);

/// Two-electron evolution of the singlet under H = w1 s1z + w2 s2z:
/// exp(-i dw t/2) [(1 + e^{i dw t})|S> + (1 - e^{i dw t})|T0>] / 2.
Vector closed_form_two_spin(double t, double delta_omega);

/// Tr{O rho(t)}/Tr{rho(t)} at every recorded time above the trace floor.
NormalizedSeries normalized_observable(const Trajectory& traj, const Matrix& o,
                                       double trace_floor = 1e-12);

}  // namespace rpsim
