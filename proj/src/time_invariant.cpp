#include "ctclock/time_invariant.hpp"

#include "ctclock/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace ctclock {

namespace {

Rational gcd2(const Rational& a, const Rational& b) {
    // gcd(p/q, r/s) = gcd(p*s, r*q)/(q*s); the Rational constructor reduces.
    BigInt g = boost::multiprecision::gcd(a.num() * b.den(), b.num() * a.den());
    return Rational(g, a.den() * b.den());
}

} // namespace

TimeInvariantSet pair_set(const Spectrum& spectrum, std::size_t k, std::size_t l) {
    if (k == l) throw IndexError("pair_set: indices must differ");
    if (k >= spectrum.n_levels() || l >= spectrum.n_levels())
        throw IndexError("pair_set: index out of range");

    TimeInvariantSet set;
    set.kind = SetKind::lattice;
    if (spectrum.is_rational(k) && spectrum.is_rational(l)) {
        Rational d = abs(spectrum.delta(k, l));
        set.exact_base = Rational(1) / d;
        set.base_period = 2.0 * std::numbers::pi / (spectrum.omega() * d.to_double());
    } else {
        set.base_period = 2.0 * std::numbers::pi / std::abs(spectrum.omega_between(k, l));
    }
    return set;
}

Rational rational_gcd(const std::vector<Rational>& values) {
    if (values.empty()) throw InvalidInput("rational_gcd: empty input");
    Rational g;
    bool started = false;
    for (const auto& v : values) {
        if (!v.is_positive())
            throw InvalidInput("rational_gcd: values must be positive, got " + v.str());
        g = started ? gcd2(g, v) : v;
        started = true;
    }
    return g;
}

TimeInvariantSet invariant_set(const Spectrum& spectrum, std::size_t n_levels) {
    if (n_levels < 2) throw InvalidInput("invariant_set: need at least two levels");
    if (n_levels > spectrum.n_levels())
        throw InvalidInput("invariant_set: truncation exceeds stored levels");

    if (!spectrum.is_commensurable()) return TimeInvariantSet{}; // {0}

    std::vector<Rational> deltas;
    deltas.reserve(n_levels * (n_levels - 1) / 2);
    for (std::size_t k = 1; k < n_levels; ++k)
        for (std::size_t l = 0; l < k; ++l) deltas.push_back(spectrum.delta(k, l));
    Rational g = rational_gcd(deltas);

    TimeInvariantSet set;
    set.kind = SetKind::lattice;
    set.exact_base = Rational(1) / g;
    set.base_period = 2.0 * std::numbers::pi / (spectrum.omega() * g.to_double());
    return set;
}

std::vector<GcdRow> gcd_stabilization(const Spectrum& spectrum, std::size_t n_min,
                                      std::size_t n_max) {
    if (n_min < 2 || n_min > n_max || n_max > spectrum.n_levels())
        throw InvalidInput("gcd_stabilization: need 2 <= n_min <= n_max <= stored levels");
    if (!spectrum.all_rational()) return {};

    std::vector<GcdRow> rows;
    rows.reserve(n_max - n_min + 1);
    // Fold incrementally: the gcd at truncation n extends the one at n-1 by
    // the differences against the newly admitted level only.
    Rational g = abs(spectrum.delta(1, 0));
    for (std::size_t k = 2; k < n_min; ++k)
        for (std::size_t l = 0; l < k; ++l) g = gcd2(g, spectrum.delta(k, l));
    for (std::size_t n = n_min; n <= n_max; ++n) {
        if (n > n_min)
            for (std::size_t l = 0; l + 1 < n; ++l) g = gcd2(g, spectrum.delta(n - 1, l));
        GcdRow row;
        row.n = n;
        row.gcd = g;
        std::size_t i = rows.size();
        row.stable = i >= 2 && rows[i - 1].gcd == g && rows[i - 2].gcd == g;
        rows.push_back(std::move(row));
    }
    return rows;
}

TimeDecomposition decompose_time(double t, const TimeInvariantSet& set) {
    TimeDecomposition d;
    if (!set.is_lattice()) {
        d.tau = t;
        d.nearest = t;
        d.no_lattice = true;
        return d;
    }
    double p = set.base_period;
    if (!(p > 0.0)) throw ContractViolation("decompose_time: lattice with nonpositive period");
    double q = std::floor(t / p);
    d.n = static_cast<long long>(q);
    d.tau = t - q * p;
    if (d.tau >= p) { // rounding at the upper edge
        d.tau -= p;
        d.n += 1;
    }
    if (d.tau < 0.0) d.tau = 0.0;
    d.nearest = t - p * std::round(t / p);
    return d;
}

} // namespace ctclock
