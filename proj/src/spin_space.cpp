#include "rpsim/spin_space.hpp"

#include <cmath>
#include <string>

#include "rpsim/errors.hpp"
#include "rpsim/linalg.hpp"

namespace rpsim {
namespace {

constexpr Complex kI{0.0, 1.0};

bool half_integral(double spin) {
  const double twice = 2.0 * spin;
  return std::abs(twice - std::round(twice)) < 1e-9;
}

int multiplicity(double spin) {
  return static_cast<int>(std::lround(2.0 * spin + 1.0));
}

// Tensor slots: electron 1, electron 2, then each nucleus in order.
std::vector<int> slot_dims(const SpinSpace& space) {
  std::vector<int> dims{2, 2};
  for (double spin : space.nuclear_spins) dims.push_back(multiplicity(spin));
  return dims;
}

Matrix embed(const SpinSpace& space, std::size_t slot, const Matrix& op) {
  const auto dims = slot_dims(space);
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i == slot)
      out = kron(out, op);
    else
      out = kron(out, Matrix::Identity(dims[i], dims[i]));
  }
  return out;
}

}  // namespace

SpinSpace build_space(const std::vector<double>& nuclear_spins) {
  SpinSpace space;
  space.nuclear_spins = nuclear_spins;
  long long m = 1;
  for (double spin : nuclear_spins) {
    if (spin < 0.0 || !half_integral(spin))
      throw ValidationError("nuclear spin must be a non-negative half-integer, got " +
                            std::to_string(spin));
    m *= multiplicity(spin);
  }
  space.nuclear_multiplicity = static_cast<int>(m);
  space.dim = static_cast<int>(4 * m);
  return space;
}

std::array<Matrix, 3> spin_matrices(double spin) {
  if (spin < 0.0 || !half_integral(spin))
    throw ValidationError("spin must be a non-negative half-integer, got " +
                          std::to_string(spin));
  const int d = multiplicity(spin);
  Matrix sz = Matrix::Zero(d, d);
  Matrix sp = Matrix::Zero(d, d);  // raising operator
  for (int k = 0; k < d; ++k) {
    const double m = spin - k;
    sz(k, k) = m;
    if (k > 0) sp(k - 1, k) = std::sqrt(spin * (spin + 1.0) - m * (m + 1.0));
  }
  const Matrix sm = sp.adjoint();
  return {0.5 * (sp + sm), -0.5 * kI * (sp - sm), sz};
}

Matrix electron_spin_op(const SpinSpace& space, int electron, Axis axis) {
  if (electron != 1 && electron != 2)
    throw ValidationError("electron index must be 1 or 2, got " + std::to_string(electron));
  const auto ops = spin_matrices(0.5);
  return embed(space, static_cast<std::size_t>(electron - 1), ops[static_cast<int>(axis)]);
}

Matrix nuclear_spin_op(const SpinSpace& space, int nucleus, Axis axis) {
  if (nucleus < 0 || nucleus >= static_cast<int>(space.nuclear_spins.size()))
    throw ValidationError("nucleus index " + std::to_string(nucleus) + " out of range");
  const auto ops = spin_matrices(space.nuclear_spins[nucleus]);
  return embed(space, static_cast<std::size_t>(2 + nucleus), ops[static_cast<int>(axis)]);
}

Matrix singlet_projector(const SpinSpace& space) {
  Matrix s1s2 = Matrix::Zero(space.dim, space.dim);
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z})
    s1s2 += electron_spin_op(space, 1, axis) * electron_spin_op(space, 2, axis);
  return 0.25 * Matrix::Identity(space.dim, space.dim) - s1s2;
}

Matrix triplet_projector(const SpinSpace& space) {
  return Matrix::Identity(space.dim, space.dim) - singlet_projector(space);
}

namespace {
Vector two_electron_state(Complex pm, Complex mp, Complex pp, Complex mm) {
  Vector v = Vector::Zero(4);
  v(0) = pp;
  v(1) = pm;
  v(2) = mp;
  v(3) = mm;
  return v;
}
}  // namespace

Vector singlet_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return two_electron_state(r, -r, 0.0, 0.0);
}

Vector triplet_zero_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return two_electron_state(r, r, 0.0, 0.0);
}

Vector triplet_plus_state() { return two_electron_state(0.0, 0.0, 1.0, 0.0); }

Vector triplet_minus_state() { return two_electron_state(0.0, 0.0, 0.0, 1.0); }

Matrix partial_trace_nuclear(const Matrix& rho, const SpinSpace& space) {
  if (rho.rows() != space.dim || rho.cols() != space.dim)
    throw ValidationError("density matrix dimension " + std::to_string(rho.rows()) +
                          " does not match the spin space dimension " +
                          std::to_string(space.dim));
  const int m = space.nuclear_multiplicity;
  Matrix out = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int n = 0; n < m; ++n) out(i, j) += rho(i * m + n, j * m + n);
  return out;
}

}  // namespace rpsim
