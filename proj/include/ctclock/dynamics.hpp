#pragma once

#include "ctclock/spectrum.hpp"
#include "ctclock/types.hpp"

#include <cstddef>
#include <string>

namespace ctclock {

/// phi_s -> phi_s * exp(-i E_s t / hbar).
StateVector evolve_state(const Spectrum& spectrum, const StateVector& phi, double t);

/// Heisenberg picture: entries T_{s,s'} * exp(i omega_{s,s'} t), Hermitian by
/// mirrored construction like the operator itself.
OperatorMatrix heisenberg_T(const OperatorMatrix& t_op, const Spectrum& spectrum, double t);

/// <T_{t(tau)}> on phi_{k,l}: sin(omega_{kl} tau) / omega_{kl}. Exact in the
/// pair block, so independent of truncation.
double expectation_T_closed(std::size_t k, std::size_t l, double tau, const Spectrum& spectrum);

/// Variance of T_{t(tau)} on phi_{k,l} truncated at m:
///   cos^2(w tau)/w^2 + (1/2) sum_{s != k,l} (1/w_sk^2 + 1/w_sl^2
///                                            - 2 cos(w tau)/(w_sk w_sl)),
/// w = omega_{kl}.
double variance_T_closed(std::size_t k, std::size_t l, double tau, const Spectrum& spectrum,
                         std::size_t m);

enum class Method { closed_form, matrix_oracle };
std::string method_name(Method m);

struct EvolvedObservableReport {
    double tau = 0.0;
    double t = 0.0;
    long long n = 0;
    double expectation = 0.0;
    double variance = 0.0;
    Method method = Method::closed_form;
    std::size_t truncation = 0;
};

/// Brute-force check: build T at truncation m, evolve phi_{k,l} by
/// t = tau + n * P_{kl}, take <T> and Var T by matrix algebra.
EvolvedObservableReport oracle_report(std::size_t k, std::size_t l, double tau, long long n,
                                      const Spectrum& spectrum, std::size_t m);

/// Same reporting shape filled from the closed forms.
EvolvedObservableReport closed_report(std::size_t k, std::size_t l, double tau, long long n,
                                      const Spectrum& spectrum, std::size_t m);

/// || U_t phi - (I - i t H / hbar) phi || for normalized phi.
double short_time_defect(const Spectrum& spectrum, const StateVector& phi, double t);

/// || (T_{t(tau)} - T - tau I) phi_{k,l} || at truncation m, t = tau + n * P_{kl}.
double covariance_defect(const Spectrum& spectrum, std::size_t k, std::size_t l, double tau,
                         long long n, std::size_t m);

struct ExtrapolatedValue {
    double value = 0.0;
    /// Magnitude of the applied correction; the true error is smaller still.
    double error_bar = 0.0;
};

/// Richardson extrapolation of the static (tau = 0) variance over truncations
/// m, 2m, 4m, assuming a geometric tail.
ExtrapolatedValue static_variance_extrapolated(std::size_t k, std::size_t l,
                                               const Spectrum& spectrum, std::size_t m);

} // namespace ctclock
