#pragma once

#include <complex>

#include <Eigen/Dense>

namespace rpsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Electron gyromagnetic ratio, Hz per gauss.
inline constexpr double kElectronGammaHzPerGauss = 2.8e6;

}  // namespace rpsim
