#include "rpsim/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "rpsim/errors.hpp"
#include "rpsim/linalg.hpp"

namespace rpsim {
namespace {

// sigma_y tensor sigma_y; real with +-1 on the antidiagonal.
const Matrix& spin_flip() {
  static const Matrix y = [] {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return y;
}

}  // namespace

double concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw ValidationError("concurrence expects a 4x4 two-electron state");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw ValidationError("concurrence expects a unit-trace state");
  if (!is_hermitian(rho, 1e-8))
    throw ValidationError("concurrence expects a Hermitian state");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
  RealVector eigs = solver.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (eigs(i) < -1e-8)
      throw ValidationError("concurrence expects a positive semidefinite state");
    if (eigs(i) < 0.0) eigs(i) = 0.0;
  }
  const Matrix sqrt_rho = solver.eigenvectors() *
                          eigs.cwiseSqrt().asDiagonal().toDenseMatrix().cast<Complex>() *
                          solver.eigenvectors().adjoint();

  // The Wootters lambdas, sqrt(eig(rho rho~)) with rho~ = Y rho* Y, are the
  // singular values of sqrt(rho)* Y sqrt(rho); the SVD keeps the vanishing
  // ones at roundoff instead of sqrt(roundoff).
  const Matrix m = sqrt_rho.conjugate() * spin_flip() * sqrt_rho;
  Eigen::JacobiSVD<Matrix> svd(m);
  const RealVector lambda = svd.singularValues();  // descending
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

double concurrence_pure(const Vector& psi) {
  if (psi.size() != 4)
    throw ValidationError("concurrence_pure expects a 4-dimensional state");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw ValidationError("concurrence_pure expects a unit-norm state");
  const Vector flipped = spin_flip() * psi.conjugate();
  return std::abs(psi.dot(flipped));
}

double entanglement_of_formation(double concurrence) {
  if (concurrence < -1e-9 || concurrence > 1.0 + 1e-9)
    throw ValidationError("concurrence must lie in [0, 1]");
  const double c = std::clamp(concurrence, 0.0, 1.0);
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

std::optional<double> entanglement_lifetime(const Trajectory& traj, double threshold) {
  if (threshold <= 0.0 || threshold >= 1.0)
    throw ValidationError("entanglement threshold must lie in (0, 1)");
  if (!traj.has_entanglement || traj.norm_valid_count == 0)
    throw ValidationError("trajectory carries no entanglement records");

  const std::size_t n = traj.norm_valid_count;
  std::size_t first = n;  // start of the sustained below-threshold tail
  for (std::size_t i = n; i-- > 0;) {
    if (traj.observables[i].eof_norm < threshold)
      first = i;
    else
      break;
  }
  if (first == n) return std::nullopt;
  return traj.times[first];
}

}  // namespace rpsim
