#include "rpsim/hamiltonian.hpp"

#include <string>

#include "rpsim/errors.hpp"
#include "rpsim/linalg.hpp"

namespace rpsim {

Matrix build_hamiltonian(const SpinSpace& space, const HamiltonianSpec& spec) {
  Matrix h = spec.omega1 * electron_spin_op(space, 1, Axis::Z) +
             spec.omega2 * electron_spin_op(space, 2, Axis::Z);
  for (const auto& hf : spec.hyperfine) {
    if (hf.electron != 1 && hf.electron != 2)
      throw ValidationError("hyperfine electron index must be 1 or 2, got " +
                            std::to_string(hf.electron));
    if (hf.nucleus < 0 || hf.nucleus >= static_cast<int>(space.nuclear_spins.size()))
      throw ValidationError("hyperfine nucleus index " + std::to_string(hf.nucleus) +
                            " out of range for " +
                            std::to_string(space.nuclear_spins.size()) + " nuclei");
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z})
      h += hf.a * nuclear_spin_op(space, hf.nucleus, axis) *
           electron_spin_op(space, hf.electron, axis);
  }
  return h;
}

EigenSystem eigendecompose(const Matrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("operator must be square");
  if (!is_hermitian(h, 1e-12))
    throw ValidationError("operator is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw ValidationError("eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace rpsim
