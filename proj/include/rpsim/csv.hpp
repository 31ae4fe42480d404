#pragma once

#include <string>
#include <vector>

#include "rpsim/trajectory.hpp"

namespace rpsim {

/// Scientific notation with the given significant digits and a compact
/// exponent: 1.129e-12, 3.571e2, 5.000000000e-1. Locale independent.
std::string format_sci(double x, int significant_digits);

/// Rows are emitted while the normalized observables are available; the time
/// column is multiplied by time_scale (delta-omega units for the Δg presets).
std::string simulation_csv(const Trajectory& traj, double time_scale);

struct YieldRow {
  double x = 0.0;  // grid value as given (k or B)
  double y_eigen = 0.0;
  double y_time = 0.0;
  double abs_diff = 0.0;
};

std::string yield_csv(const std::vector<YieldRow>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace rpsim
