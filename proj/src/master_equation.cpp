#include "rpsim/master_equation.hpp"

#include <string>

#include "rpsim/errors.hpp"

namespace rpsim {

const char* theory_name(TheoryKind kind) {
  switch (kind) {
    case TheoryKind::Traditional: return "traditional";
    case TheoryKind::JonesHore: return "joneshore";
    case TheoryKind::Kominis: return "kominis";
  }
  return "unknown";
}

namespace detail {

void RhsBuffers::resize(Eigen::Index n) {
  t1.resize(n, n);
  t2.resize(n, n);
  qs_rho.resize(n, n);
  rho_qs.resize(n, n);
  qs_rho_qs.resize(n, n);
}

void reaction_rhs(const MasterEquation& me, const Matrix& h, const Matrix& q_s,
                  const Matrix& rho, Matrix& out, RhsBuffers& b,
                  double* singlet_rate, double* triplet_rate) {
  const double ks = me.k_s;
  const double kt = me.k_t;

  b.t1.noalias() = h * rho;
  b.t2.noalias() = rho * h;
  out = Complex(0.0, -1.0) * (b.t1 - b.t2);

  const bool reacting = ks != 0.0 || kt != 0.0;
  const bool want_rates = singlet_rate != nullptr || triplet_rate != nullptr;
  if (!reacting && !want_rates) return;

  b.qs_rho.noalias() = q_s * rho;
  const double trace = rho.trace().real();
  const double tr_qs_rho = b.qs_rho.trace().real();
  if (singlet_rate) *singlet_rate = ks * tr_qs_rho;
  if (triplet_rate) *triplet_rate = kt * (trace - tr_qs_rho);
  if (!reacting) return;

  b.rho_qs.noalias() = rho * q_s;
  switch (me.kind) {
    case TheoryKind::Traditional:
      // -(k_s/2){Q_S,rho} - (k_t/2){Q_T,rho} = -k_t rho - (k_s-k_t)/2 {Q_S,rho}
      out -= kt * rho + 0.5 * (ks - kt) * (b.qs_rho + b.rho_qs);
      break;
    case TheoryKind::JonesHore:
      // rho - Q_T rho Q_T = Q_S rho + rho Q_S - Q_S rho Q_S
      b.qs_rho_qs.noalias() = b.qs_rho * q_s;
      out -= ks * (b.qs_rho + b.rho_qs - b.qs_rho_qs);
      out -= kt * (rho - b.qs_rho_qs);
      break;
    case TheoryKind::Kominis:
      b.qs_rho_qs.noalias() = b.qs_rho * q_s;
      out -= 0.5 * (ks + kt) * (b.qs_rho + b.rho_qs - 2.0 * b.qs_rho_qs);
      if (me.kominis_loss == KominisLoss::NonlinearTrace) {
        if (trace <= 0.0)
          throw ValidationError("Kominis master equation is degenerate for Tr{rho} <= 0");
        out -= ((ks * tr_qs_rho + kt * (trace - tr_qs_rho)) / trace) * rho;
      } else {
        // projective sink on each channel
        out -= ks * b.qs_rho_qs + kt * (rho - b.qs_rho - b.rho_qs + b.qs_rho_qs);
      }
      break;
  }
}

Rk4Stepper::Rk4Stepper(const MasterEquation& me, const Matrix& h, const Matrix& q_s)
    : me_(me), h_(h), q_s_(q_s) {
  const Eigen::Index n = h.rows();
  buf_.resize(n);
  k1_.resize(n, n);
  k2_.resize(n, n);
  k3_.resize(n, n);
  k4_.resize(n, n);
  stage_.resize(n, n);
}

void Rk4Stepper::step(Matrix& rho, double dt, double* singlet_yield, double* triplet_yield) {
  const bool yields = singlet_yield != nullptr || triplet_yield != nullptr;
  double rs[4] = {0, 0, 0, 0};
  double rt[4] = {0, 0, 0, 0};
  double* ps = yields ? &rs[0] : nullptr;
  double* pt = yields ? &rt[0] : nullptr;

  reaction_rhs(me_, h_, q_s_, rho, k1_, buf_, ps, pt);
  stage_ = rho + (0.5 * dt) * k1_;
  if (yields) { ps = &rs[1]; pt = &rt[1]; }
  reaction_rhs(me_, h_, q_s_, stage_, k2_, buf_, ps, pt);
  stage_ = rho + (0.5 * dt) * k2_;
  if (yields) { ps = &rs[2]; pt = &rt[2]; }
  reaction_rhs(me_, h_, q_s_, stage_, k3_, buf_, ps, pt);
  stage_ = rho + dt * k3_;
  if (yields) { ps = &rs[3]; pt = &rt[3]; }
  reaction_rhs(me_, h_, q_s_, stage_, k4_, buf_, ps, pt);

  rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  if (singlet_yield)
    *singlet_yield += (dt / 6.0) * (rs[0] + 2.0 * rs[1] + 2.0 * rs[2] + rs[3]);
  if (triplet_yield)
    *triplet_yield += (dt / 6.0) * (rt[0] + 2.0 * rt[1] + 2.0 * rt[2] + rt[3]);
}

}  // namespace detail

Matrix apply_liouvillian(const MasterEquation& me, const Matrix& h,
                         const Matrix& q_s, const Matrix& rho) {
  if (h.rows() != h.cols() || q_s.rows() != q_s.cols() || rho.rows() != rho.cols())
    throw ValidationError("operators must be square");
  if (h.rows() != rho.rows() || q_s.rows() != rho.rows())
    throw ValidationError("operator dimensions do not match");
  if (me.k_s < 0.0 || me.k_t < 0.0)
    throw ValidationError("recombination rates must be non-negative");
  Matrix out(rho.rows(), rho.cols());
  detail::RhsBuffers buf;
  buf.resize(rho.rows());
  detail::reaction_rhs(me, h, q_s, rho, out, buf);
  return out;
}

}  // namespace rpsim
