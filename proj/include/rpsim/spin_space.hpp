#pragma once

#include <array>
#include <vector>

#include "rpsim/types.hpp"

namespace rpsim {

/// Composite Hilbert space of two electrons and any number of nuclear spins.
/// Basis ordering is fixed: |++>, |+->, |-+>, |--> for the electrons
/// (electron 1 first), tensored with the nuclear product basis on the right.
struct SpinSpace {
  std::vector<double> nuclear_spins;  // half-integers, e.g. {0.5, 1.0}
  int nuclear_multiplicity = 1;       // M = prod(2I_j + 1)
  int dim = 4;                        // 4 * M
};

enum class Axis { X, Y, Z };

SpinSpace build_space(const std::vector<double>& nuclear_spins);

/// (sx, sy, sz) for a single spin of quantum number `spin`, dimension 2I+1,
/// sz eigenvalues descending from +I.
std::array<Matrix, 3> spin_matrices(double spin);

/// Spin-1/2 operator on the chosen electron (1 or 2), identity elsewhere.
Matrix electron_spin_op(const SpinSpace& space, int electron, Axis axis);

/// Spin operator on the chosen nucleus, identity elsewhere.
Matrix nuclear_spin_op(const SpinSpace& space, int nucleus, Axis axis);

/// Q_S = (1/4 I - S1.S2) tensor I_nuclear, rank M.
Matrix singlet_projector(const SpinSpace& space);

/// Q_T = I - Q_S.
Matrix triplet_projector(const SpinSpace& space);

// Named two-electron states on the 4-dimensional electron space.
Vector singlet_state();
Vector triplet_zero_state();
Vector triplet_plus_state();
Vector triplet_minus_state();

/// Trace out the nuclear factor; returns the 4x4 two-electron state.
Matrix partial_trace_nuclear(const Matrix& rho, const SpinSpace& space);

}  // namespace rpsim
