#pragma once

#include "ctclock/spectrum.hpp"
#include "ctclock/time_invariant.hpp"
#include "ctclock/types.hpp"

#include <cstdint>

namespace ctclock {

/// Two-level compression of T and H onto span{|k>, |l>}, k > l, basis order
/// (k, l). T_kl = -(1/omega_kl) sigma_y there, so reading sigma_y reads time.
struct ProjectedClock {
    std::size_t k = 0;
    std::size_t l = 0;
    OperatorMatrix T_kl;
    OperatorMatrix H_kl;
    TimeInvariantSet lattice;
    double omega_kl = 0.0;
    double hbar = 1.0;
    Spectrum spectrum;
};

ProjectedClock make_projected_clock(const Spectrum& spectrum, std::size_t k, std::size_t l);

/// Spin-1/2 in a static field, H = omega S_z: levels f = [-1/2, 1/2].
Spectrum larmor_spectrum(double omega, double hbar = 1.0);

/// Lambda(tau) = 2^{-1/2}(exp(-i w_k tau)|k> - exp(-i w_l tau)|l>) as a
/// (k+1)-dimensional vector, w_s = E_s/hbar. Satisfies U_t Lambda(tau) =
/// Lambda(tau + t).
StateVector clock_state(const ProjectedClock& clock, double tau);

struct ClockReading {
    double tau_linear = 0.0;
    double tau_arcsin = 0.0;
    long long n = 0;
    double uncertainty_product = 0.0;
    long long shots = 0;
    /// Sampling noise pushed |omega <T>| past 1; arcsin took the clamped value.
    bool clamped = false;
};

/// Counts of the two S_y outcomes from a deterministic seeded run.
struct MeasurementEnsemble {
    long long shots = 0;
    std::uint64_t seed = 0;
    long long n_plus = 0;
    long long n_minus = 0;
};

/// Born-rule sampling of a binary outcome with P(+) = p_plus. Deterministic
/// given the seed: shots are drawn in fixed chunks of 65536, each chunk from
/// its own mt19937_64 seeded by a splitmix64 hash of (seed, chunk index), so
/// chunk results could be produced in parallel and merged by addition.
MeasurementEnsemble sample_sy_ensemble(double p_plus, long long shots, std::uint64_t seed);

/// Read the clock from a state living in the (k, l) block (projection weight
/// at least 1 - 1e-12, else ProjectionError). shots = 0 uses the exact
/// expectation; shots > 0 estimates <S_y> by sampling and converts through
/// <T_kl> = -(2/(hbar omega_kl)) <S_y>. The cycle count n is caller-supplied
/// and passed through to the reading.
ClockReading read_time(const ProjectedClock& clock, const StateVector& state, long long shots,
                       std::uint64_t seed, long long n = 0);

/// Delta T_kl * Delta H_kl on Lambda(tau), computed from variance(), not from
/// the (hbar/2)|cos omega_kl tau| formula it is tested against.
double uncertainty_product(const ProjectedClock& clock, double tau);

struct TransitionReport {
    /// First time the evolved |S_y,+> fully becomes |S_y,->.
    double transition_time = 0.0;
    /// Spread of the T_kl eigenvalues, 2/omega_kl, reported for comparison.
    double eigenvalue_difference = 0.0;
};

TransitionReport eigenstate_transition_time(const ProjectedClock& clock);

struct ResolutionReport {
    double delta_t = 0.0;        // lattice spacing 2 pi hbar / (E_k - E_l)
    double delta_T_at_tick = 0.0; // readout uncertainty hbar / (E_k - E_l)
};

ResolutionReport resolution_report(const ProjectedClock& clock);

} // namespace ctclock
