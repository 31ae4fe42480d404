#pragma once

#include "rpsim/types.hpp"

namespace rpsim {

/// Inputs for the reaction-magnetometer sensitivity estimates. gamma is the
/// electron gyromagnetic ratio in Hz per gauss; times are in seconds.
struct SensitivityInput {
  double n0 = 0.0;   // radical pairs created per photoexcitation cycle
  double t_r = 0.0;  // reaction time, s
  double tau = 0.0;  // total measurement time, s
  double snr = 0.0;  // signal-to-noise ratio of the yield measurement
  double gamma = kElectronGammaHzPerGauss;
};

/// Shot-noise-limited sensitivity 1/(gamma sqrt(N0 tau T_r)), gauss.
double shot_noise_limit(const SensitivityInput& in);

/// SNR-limited sensitivity 1/(gamma (S/N) T_r), gauss.
double snr_limit(const SensitivityInput& in);

/// True while S/N <= sqrt(N0), the regime where the SNR limit applies.
bool snr_within_shot_noise(const SensitivityInput& in);

/// delta B = delta O / |dO/dB|. A zero slope yields +infinity -- the
/// distinguished "observable carries no field information" result.
double observable_sensitivity(double delta_o, double do_db);

/// Timing precision of a lifetime measurement: T_E^2 / (T_r (S/N)).
double lifetime_precision(double t_e, double t_r, double snr);

/// delta B attained through an entanglement-lifetime measurement:
/// (1/(S/N)) (T_E^2/T_r) / |dT_E/dB|; +infinity for a zero slope.
double entanglement_lifetime_sensitivity(const SensitivityInput& in, double t_e,
                                         double dte_db);

struct BoundCheckResult {
  bool satisfied = true;
  double ratio = 0.0;  // |dT_E/dB| / (gamma T_E^2)
};

/// Consistency bound |dT_E/dB| <= gamma T_E^2, boundary inclusive.
BoundCheckResult bound_check(double t_e, double dte_db, double gamma);

}  // namespace rpsim
