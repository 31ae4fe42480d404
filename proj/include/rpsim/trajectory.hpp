#pragma once

#include <cstddef>
#include <vector>

#include "rpsim/types.hpp"

namespace rpsim {

struct TrajectoryPoint {
  double t = 0.0;
  double trace = 0.0;
  double qs_norm = 0.0;           // <Q_S> of rho/Tr{rho}
  double concurrence_norm = 0.0;  // on the nuclear-traced normalized state
  double eof_norm = 0.0;
};

/// Time series of density-matrix snapshots and derived observables.
/// Normalized entries are valid for indices < norm_valid_count; once the
/// trace falls below the floor the remaining entries hold NaN.
struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> rho;  // raw (unnormalized) snapshots
  std::vector<TrajectoryPoint> observables;
  std::size_t norm_valid_count = 0;
  double initial_trace = 1.0;
  bool has_entanglement = false;
};

struct NormalizedSeries {
  std::vector<double> values;
  std::size_t valid_count = 0;
};

}  // namespace rpsim
