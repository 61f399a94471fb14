#pragma once

#include "ctclock/rational.hpp"
#include "ctclock/spectrum.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ctclock {

enum class SetKind { zero_only, lattice };

/// Either {0} or the lattice {j*P : j integer}. For rational spectra the base
/// period is also carried exactly: P = (2*pi/omega) * exact_base.
struct TimeInvariantSet {
    SetKind kind = SetKind::zero_only;
    double base_period = 0.0;
    std::optional<Rational> exact_base;

    bool is_lattice() const { return kind == SetKind::lattice; }
};

/// Lattice of times with t*omega_{k,l} a multiple of 2*pi: P = 2*pi/|omega_{k,l}|.
TimeInvariantSet pair_set(const Spectrum& spectrum, std::size_t k, std::size_t l);

/// Largest g with every value an integer multiple of g.
/// gcd(p/q, r/s) = gcd(p*s, r*q)/(q*s), folded over the list.
Rational rational_gcd(const std::vector<Rational>& values);

/// Intersection of all pair lattices over the first n_levels:
/// P = 2*pi/(omega*g) for g = gcd of the pairwise level differences, computed
/// exactly. Incommensurate spectra collapse to {0}.
TimeInvariantSet invariant_set(const Spectrum& spectrum, std::size_t n_levels);

struct GcdRow {
    std::size_t n = 0;
    Rational gcd;
    /// True when this row and the two before it agree.
    bool stable = false;
};

/// gcd of the difference set at each truncation n in [n_min, n_max]; the
/// honesty mechanism for quoting a finite-truncation gcd. Empty for spectra
/// with any irrational level (no rational gcd exists).
std::vector<GcdRow> gcd_stabilization(const Spectrum& spectrum, std::size_t n_min,
                                      std::size_t n_max);

struct TimeDecomposition {
    long long n = 0;
    double tau = 0.0;
    /// Signed distance to the nearest lattice point (to 0 for the {0} set).
    double nearest = 0.0;
    bool no_lattice = false;
};

/// t = n*P + tau with tau in [0, P). For the zero-only set the raw t comes
/// back as tau with the no_lattice flag raised.
TimeDecomposition decompose_time(double t, const TimeInvariantSet& set);

} // namespace ctclock
