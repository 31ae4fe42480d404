#include "rpsim/yield.hpp"

#include <cmath>
#include <numbers>

#include "rpsim/errors.hpp"
#include "rpsim/linalg.hpp"

namespace rpsim {

YieldResult singlet_yield_eigenbasis(const Matrix& h, const Matrix& q_s, double k,
                                     int nuclear_multiplicity) {
  if (k <= 0.0) throw ValidationError("recombination rate k must be positive");
  if (nuclear_multiplicity < 1)
    throw ValidationError("nuclear multiplicity must be at least 1");
  if (h.rows() != q_s.rows() || h.cols() != q_s.cols())
    throw ValidationError("operator dimensions do not match");

  const EigenSystem es = eigendecompose(h);
  const Matrix qs_eigen = es.basis.adjoint() * q_s * es.basis;
  const double k2 = k * k;
  double sum = 0.0;
  for (Eigen::Index n = 0; n < qs_eigen.rows(); ++n)
    for (Eigen::Index m = 0; m < qs_eigen.cols(); ++m) {
      const double w = es.frequencies(n) - es.frequencies(m);
      sum += std::norm(qs_eigen(n, m)) * k2 / (k2 + w * w);
    }
  const double y_s = sum / nuclear_multiplicity;
  return {y_s, 1.0 - y_s, YieldMethod::Eigenbasis};
}

YieldResult singlet_yield_timedomain(const Matrix& rho0, const MasterEquation& me,
                                     const Matrix& h, const Matrix& q_s) {
  if (me.kind != TheoryKind::Traditional)
    throw ValidationError("the time-domain yield is defined for the traditional kind");
  if (me.k_s <= 0.0 || me.k_t <= 0.0)
    throw ValidationError("time-domain yield needs positive recombination rates");
  if (!is_hermitian(rho0, 1e-8) || std::abs(rho0.trace().real() - 1.0) > 1e-9)
    throw ValidationError("initial state must be Hermitian with unit trace");

  const double t_cap = 50.0 / std::min(me.k_s, me.k_t);
  const double dt = default_step(h, me);
  detail::Rk4Stepper stepper(me, h, q_s);

  Matrix rho = rho0;
  double y_s = 0.0;
  double y_t = 0.0;
  double t = 0.0;
  while (rho.trace().real() >= 1e-8) {
    if (t >= t_cap)
      throw IntegrationError("yield integration did not converge before the time cap");
    stepper.step(rho, dt, &y_s, &y_t);
    t += dt;
  }
  return {y_s, y_t, YieldMethod::TimeDomain};
}

Matrix singlet_mixed_nuclear_state(const SpinSpace& space) {
  return singlet_projector(space) / static_cast<double>(space.nuclear_multiplicity);
}

HamiltonianSpec zeeman_at_field(const DeltaGModel& model, double b_gauss) {
  HamiltonianSpec spec;
  spec.omega1 = 2.0 * std::numbers::pi * model.gamma1_hz * b_gauss;
  spec.omega2 = 2.0 * std::numbers::pi * model.gamma2_hz * b_gauss;
  return spec;
}

double yield_slope_vs_field(const DeltaGModel& model, double k, double b_gauss,
                            double rel_step) {
  if (b_gauss <= 0.0) throw ValidationError("field must be positive");
  if (rel_step <= 0.0) throw ValidationError("relative step must be positive");
  const SpinSpace space = build_space({});
  const Matrix q_s = singlet_projector(space);
  const double h = rel_step * b_gauss;
  const auto y_at = [&](double b) {
    const Matrix ham = build_hamiltonian(space, zeeman_at_field(model, b));
    return singlet_yield_eigenbasis(ham, q_s, k, 1).y_s;
  };
  return (y_at(b_gauss + h) - y_at(b_gauss - h)) / (2.0 * h);
}

}  // namespace rpsim
