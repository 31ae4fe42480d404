#pragma once

#include <vector>

#include "rpsim/spin_space.hpp"

namespace rpsim {

struct HyperfineCoupling {
  int electron = 1;  // 1 or 2
  int nucleus = 0;   // index into SpinSpace::nuclear_spins
  double a = 0.0;    // isotropic coupling, rad per unit time
};

/// Zeeman terms for both electrons plus isotropic hyperfine couplings,
/// in angular-frequency units (hbar = 1).
struct HamiltonianSpec {
  double omega1 = 0.0;
  double omega2 = 0.0;
  std::vector<HyperfineCoupling> hyperfine;

  /// S-T0 mixing frequency of the nucleus-free model.
  double delta_omega() const { return omega1 - omega2; }
};

/// H = w1 s1z + w2 s2z + sum_j a_j I_j . S_e(j); Hermitian by construction.
Matrix build_hamiltonian(const SpinSpace& space, const HamiltonianSpec& spec);

struct EigenSystem {
  RealVector frequencies;  // ascending
  Matrix basis;            // unitary; H = V diag(w) V^dagger
};

EigenSystem eigendecompose(const Matrix& h);

}  // namespace rpsim
