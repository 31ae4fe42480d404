#pragma once

#include "rpsim/types.hpp"

namespace rpsim {

enum class TheoryKind { Traditional, JonesHore, Kominis };

/// Population-loss variant of the Kominis reaction term. The measurement
/// dephasing at rate (k_s + k_t)/2 is common to both; they differ in how the
/// recombination sink removes population.
enum class KominisLoss { NonlinearTrace, ProjectiveLinear };

struct MasterEquation {
  TheoryKind kind = TheoryKind::Traditional;
  double k_s = 0.0;  // singlet recombination rate, rad per unit time
  double k_t = 0.0;  // triplet recombination rate
  KominisLoss kominis_loss = KominisLoss::NonlinearTrace;
};

const char* theory_name(TheoryKind kind);

/// Full right-hand side -i[H,rho] + L(rho) for the selected theory:
///   Traditional: L = -(k_s/2){Q_S,rho} - (k_t/2){Q_T,rho}
///   JonesHore:   L = -k_s(rho - Q_T rho Q_T) - k_t(rho - Q_S rho Q_S)
///   Kominis:     L = -((k_s+k_t)/2)(Q_S rho + rho Q_S - 2 Q_S rho Q_S)
///                    - (k_s<Q_S> + k_t<Q_T>) rho,  <Q> = Tr{Q rho}/Tr{rho}
Matrix apply_liouvillian(const MasterEquation& me, const Matrix& h,
                         const Matrix& q_s, const Matrix& rho);

namespace detail {

struct RhsBuffers {
  Matrix t1, t2, qs_rho, rho_qs, qs_rho_qs;
  void resize(Eigen::Index n);
};

/// out = -i[H,rho] + L(rho). When requested, also reports the channel loss
/// rates k_s Tr{Q_S rho} and k_t Tr{Q_T rho} used for yield quadrature.
void reaction_rhs(const MasterEquation& me, const Matrix& h, const Matrix& q_s,
                  const Matrix& rho, Matrix& out, RhsBuffers& buf,
                  double* singlet_rate = nullptr, double* triplet_rate = nullptr);

/// One classical RK4 step of rho and, optionally, of the accumulated yields.
class Rk4Stepper {
 public:
  Rk4Stepper(const MasterEquation& me, const Matrix& h, const Matrix& q_s);
  void step(Matrix& rho, double dt, double* singlet_yield = nullptr,
            double* triplet_yield = nullptr);

 private:
  const MasterEquation& me_;
  const Matrix& h_;
  const Matrix& q_s_;
  RhsBuffers buf_;
  Matrix k1_, k2_, k3_, k4_, stage_;
};

}  // namespace detail
}  // namespace rpsim
