#include "rpsim/evolve.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rpsim/entanglement.hpp"
#include "rpsim/errors.hpp"
#include "rpsim/linalg.hpp"

namespace rpsim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double spectral_radius(const Matrix& h) {
  if (max_abs(h) == 0.0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

double default_step(const Matrix& h, const MasterEquation& me) {
  const double scale = std::max(spectral_radius(h), std::max(me.k_s, me.k_t));
  if (scale <= 0.0)
    throw ValidationError("no dynamical scale to choose a step from; specify dt");
  return 1.0 / (200.0 * scale);
}

Trajectory evolve(const Matrix& rho0, const MasterEquation& me, const Matrix& h,
                  const SpinSpace& space, const EvolveOptions& opt) {
  if (rho0.rows() != space.dim || rho0.cols() != space.dim)
    throw ValidationError("initial state dimension does not match the spin space");
  if (h.rows() != space.dim || h.cols() != space.dim)
    throw ValidationError("Hamiltonian dimension does not match the spin space");
  if (!is_hermitian(rho0, 1e-8))
    throw ValidationError("initial state is not Hermitian");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-8)
    throw ValidationError("initial state must have unit trace");
  if (min_eigenvalue(rho0) < -1e-8)
    throw ValidationError("initial state is not positive semidefinite");
  if (opt.t_max <= 0.0) throw ValidationError("t_max must be positive");
  if (opt.store_points < 2) throw ValidationError("store_points must be at least 2");

  const double dt_req = opt.dt > 0.0 ? opt.dt : default_step(h, me);
  const long steps = std::max(1L, std::lround(std::ceil(opt.t_max / dt_req - 1e-12)));
  const double dt = opt.t_max / static_cast<double>(steps);
  const long stride = std::max(1L, steps / opt.store_points);

  const Matrix q_s = singlet_projector(space);
  detail::Rk4Stepper stepper(me, h, q_s);

  Trajectory traj;
  traj.initial_trace = rho0.trace().real();
  traj.has_entanglement = opt.compute_entanglement;

  Matrix rho = rho0;
  double prev_trace = traj.initial_trace;
  bool norm_available = true;

  auto record = [&](double t) {
    const double trace = rho.trace().real();
    if (trace > prev_trace + 1e-6)
      throw IntegrationError("trace grew by more than 1e-6 at t = " + std::to_string(t) +
                             "; reduce dt");
    if (min_eigenvalue(rho) < -1e-6)
      throw IntegrationError("density matrix negativity exceeded 1e-6 at t = " +
                             std::to_string(t) + "; reduce dt");
    prev_trace = trace;

    TrajectoryPoint p;
    p.t = t;
    p.trace = trace;
    if (norm_available && trace > opt.trace_floor) {
      p.qs_norm = (q_s * rho).trace().real() / trace;
      if (opt.compute_entanglement) {
        const Matrix reduced = partial_trace_nuclear(rho, space) / trace;
        p.concurrence_norm = concurrence(reduced);
        p.eof_norm = entanglement_of_formation(p.concurrence_norm);
      } else {
        p.concurrence_norm = kNaN;
        p.eof_norm = kNaN;
      }
      ++traj.norm_valid_count;
    } else {
      // the surviving ensemble is considered fully recombined from here on
      norm_available = false;
      p.qs_norm = kNaN;
      p.concurrence_norm = kNaN;
      p.eof_norm = kNaN;
    }
    traj.times.push_back(t);
    traj.rho.push_back(rho);
    traj.observables.push_back(p);
  };

  record(0.0);
  for (long step = 1; step <= steps; ++step) {
    stepper.step(rho, dt);
    if (step % stride == 0 || step == steps) record(static_cast<double>(step) * dt);
  }
  return traj;
}

Vector closed_form_two_spin(double t, double delta_omega) {
  const Complex phase = std::exp(Complex(0.0, delta_omega * t));
  const Complex global = std::exp(Complex(0.0, -0.5 * delta_omega * t));
  return global * (0.5 * (1.0 + phase) * singlet_state() +
                   0.5 * (1.0 - phase) * triplet_zero_state());
}

NormalizedSeries normalized_observable(const Trajectory& traj, const Matrix& o,
                                       double trace_floor) {
  NormalizedSeries series;
  series.values.reserve(traj.times.size());
  bool available = true;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Matrix& rho = traj.rho[i];
    if (o.rows() != rho.rows() || o.cols() != rho.cols())
      throw ValidationError("observable dimension does not match the trajectory");
    const double trace = rho.trace().real();
    if (!available || trace <= trace_floor) {
      available = false;
      series.values.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    series.values.push_back((o * rho).trace().real() / trace);
    ++series.valid_count;
  }
  return series;
}

}  // namespace rpsim
