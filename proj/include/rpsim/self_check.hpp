#pragma once

#include <ostream>

namespace rpsim {

/// Built-in invariant suite behind the `check` subcommand: projector algebra,
/// Hermiticity/positivity along trajectories of all three theories,
/// concurrence dual-path agreement on random pure states, EoF monotonicity,
/// and integrator step-halving convergence. Prints one line per group.
bool run_self_check(std::ostream& out);

}  // namespace rpsim
