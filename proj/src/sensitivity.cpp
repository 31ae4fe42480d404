#include "rpsim/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rpsim/errors.hpp"

namespace rpsim {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0))
    throw ValidationError(std::string(name) + " must be positive");
}

}  // namespace

double shot_noise_limit(const SensitivityInput& in) {
  require_positive(in.gamma, "gamma");
  require_positive(in.n0, "N0");
  require_positive(in.tau, "tau");
  require_positive(in.t_r, "T_r");
  return 1.0 / (in.gamma * std::sqrt(in.n0 * in.tau * in.t_r));
}

double snr_limit(const SensitivityInput& in) {
  require_positive(in.gamma, "gamma");
  require_positive(in.snr, "S/N");
  require_positive(in.t_r, "T_r");
  return 1.0 / (in.gamma * in.snr * in.t_r);
}

bool snr_within_shot_noise(const SensitivityInput& in) {
  require_positive(in.n0, "N0");
  require_positive(in.snr, "S/N");
  return in.snr <= std::sqrt(in.n0);
}

double observable_sensitivity(double delta_o, double do_db) {
  require_positive(delta_o, "delta O");
  if (do_db == 0.0) return std::numeric_limits<double>::infinity();
  return delta_o / std::abs(do_db);
}

double lifetime_precision(double t_e, double t_r, double snr) {
  require_positive(t_e, "T_E");
  require_positive(t_r, "T_r");
  require_positive(snr, "S/N");
  return t_e * t_e / (t_r * snr);
}

double entanglement_lifetime_sensitivity(const SensitivityInput& in, double t_e,
                                         double dte_db) {
  require_positive(t_e, "T_E");
  require_positive(in.snr, "S/N");
  require_positive(in.t_r, "T_r");
  if (dte_db == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 / in.snr) * (t_e * t_e / in.t_r) / std::abs(dte_db);
}

BoundCheckResult bound_check(double t_e, double dte_db, double gamma) {
  require_positive(t_e, "T_E");
  require_positive(gamma, "gamma");
  const double ratio = std::abs(dte_db) / (gamma * t_e * t_e);
  return {ratio <= 1.0, ratio};
}

}  // namespace rpsim
