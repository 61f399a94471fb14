#pragma once

#include "ctclock/spectrum.hpp"
#include "ctclock/types.hpp"

namespace ctclock {

/// T_{s,s'} = i/omega_{s,s'} off the diagonal, 0 on it. Hermitian with purely
/// imaginary entries by construction (the mirror entry is stored as the exact
/// conjugate, so max |T - T^dagger| is zero, not merely small).
OperatorMatrix build_time_operator(const Spectrum& spectrum, Index m);

/// diag(E_0 .. E_{m-1}).
OperatorMatrix build_hamiltonian(const Spectrum& spectrum, Index m);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// 2x2 restriction of a to span{|k>, |l>}, basis order (k, l).
OperatorMatrix project_pair(const OperatorMatrix& a, Index k, Index l);

/// ||(TH - HT) phi - i hbar phi||.
double ccr_residual(const OperatorMatrix& t, const OperatorMatrix& h, const StateVector& phi,
                    double hbar = 1.0);

/// <phi|A|phi> for Hermitian a; throws ContractViolation on a non-Hermitian
/// input or a residual imaginary part above tolerance.
double expectation(const OperatorMatrix& a, const StateVector& phi);

/// <A^2> - <A>^2, clamped to 0 when rounding dips slightly negative.
double variance(const OperatorMatrix& a, const StateVector& phi);

} // namespace ctclock
