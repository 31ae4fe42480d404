#pragma once

#include "rpsim/evolve.hpp"
#include "rpsim/hamiltonian.hpp"

namespace rpsim {

enum class YieldMethod { Eigenbasis, TimeDomain };

struct YieldResult {
  double y_s = 0.0;
  double y_t = 0.0;
  YieldMethod method = YieldMethod::Eigenbasis;
};

/// Closed-form singlet yield for equal recombination rates k_s = k_t = k and
/// a singlet-born pair with maximally mixed nuclei:
///   Y_S = (1/M) sum_nm |(Q_S)_nm|^2 k^2 / (k^2 + w_nm^2)
/// with (Q_S)_nm taken in the eigenbasis of H and w_nm = w_n - w_m.
YieldResult singlet_yield_eigenbasis(const Matrix& h, const Matrix& q_s,
                                     double k, int nuclear_multiplicity);

/// Independent route: Y_S = k_s Int Tr{Q_S rho(t)} dt under the traditional
/// master equation, accumulated by the integrator's quadrature until
/// Tr{rho} < 1e-8 (time cap 50/min(k_s, k_t)).
YieldResult singlet_yield_timedomain(const Matrix& rho0, const MasterEquation& me,
                                     const Matrix& h, const Matrix& q_s);

/// Singlet-born initial state (|S><S| x I_nuclear)/M, trace one.
Matrix singlet_mixed_nuclear_state(const SpinSpace& space);

/// Delta-g pair with field-dependent Larmor frequencies. Gyromagnetic ratios
/// are in Hz/G; omega_i = 2 pi gamma_i B converts to the angular-frequency
/// units used by the dynamics (the 2 pi lives only on this boundary).
struct DeltaGModel {
  double gamma1_hz = 0.0;
  double gamma2_hz = 0.0;
};

HamiltonianSpec zeeman_at_field(const DeltaGModel& model, double b_gauss);

/// dY_S/dB by central difference with a relative step in the field.
double yield_slope_vs_field(const DeltaGModel& model, double k, double b_gauss,
                            double rel_step = 1e-4);

}  // namespace rpsim
