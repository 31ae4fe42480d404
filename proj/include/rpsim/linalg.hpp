#pragma once

#include "rpsim/types.hpp"

namespace rpsim {

Matrix kron(const Matrix& a, const Matrix& b);

/// Largest absolute entry.
double max_abs(const Matrix& m);

/// max|M - M^dagger| <= tol * max(1, max|M|).
bool is_hermitian(const Matrix& m, double tol);

}  // namespace rpsim
