#pragma once

#include <Eigen/Dense>

#include <complex>

namespace ctclock {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Complex coefficients in the energy eigenbasis; size() is the truncation M.
using StateVector = Eigen::VectorXcd;

/// Dense complex matrix in the energy eigenbasis.
using OperatorMatrix = Eigen::MatrixXcd;

namespace tol {
/// Absolute tolerance for machine-exact identities.
inline constexpr double exact = 1e-12;
/// Relative tolerance for series-truncated quantities.
inline constexpr double series = 1e-9;
/// Default tolerance on |sum of coefficients| for canonical-domain membership.
inline constexpr double membership = 1e-10;
} // namespace tol

} // namespace ctclock
