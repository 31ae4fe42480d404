#pragma once

#include <optional>

#include "rpsim/trajectory.hpp"

namespace rpsim {

/// Wootters concurrence of a two-electron density matrix (4x4, unit trace).
/// Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), sorted
/// descending; returns max(0, l1 - l2 - l3 - l4).
double concurrence(const Matrix& rho);

/// |<psi| sy x sy |psi*>| -- the pure-state spin-flip overlap. Agrees with
/// concurrence(|psi><psi|) and serves as its independent second route.
double concurrence_pure(const Vector& psi);

/// E(C) = h((1 + sqrt(1 - C^2))/2), h the binary entropy in bits.
double entanglement_of_formation(double concurrence);

/// Smallest recorded time after which the normalized EoF stays below the
/// threshold; nullopt if the crossing is never sustained.
std::optional<double> entanglement_lifetime(const Trajectory& traj, double threshold);

}  // namespace rpsim
