#include "ctclock/canonical.hpp"

#include "ctclock/errors.hpp"

#include <cmath>
#include <string>

namespace ctclock {

namespace {

void require_pair(Index k, Index l, Index m) {
    if (k == l) throw IndexError("canonical: pair indices must differ");
    if (k < 0 || l < 0 || k >= m || l >= m)
        throw IndexError("canonical: pair index out of range for truncation " +
                         std::to_string(m));
}

} // namespace

StateVector pair_vector(Index k, Index l, Index m) {
    require_pair(k, l, m);
    StateVector v = StateVector::Zero(m);
    v(k) = Complex(1.0, 0.0);
    v(l) = Complex(-1.0, 0.0);
    return v;
}

StateVector normalized_pair_vector(Index k, Index l, Index m) {
    return pair_vector(k, l, m) / std::sqrt(2.0);
}

CanonicalVector assemble(const std::map<std::pair<Index, Index>, Complex>& a_map, Index m) {
    CanonicalVector cv;
    cv.coefficients = a_map;
    cv.assembled = StateVector::Zero(m);
    for (const auto& [pair, a] : a_map) {
        auto [k, l] = pair;
        require_pair(k, l, m);
        if (k < l) throw IndexError("assemble: pair keys must be ordered k > l");
        cv.assembled(k) += a;
        cv.assembled(l) -= a;
    }
    return cv;
}

MembershipReport membership_test(const StateVector& phi, double tol) {
    // Weight threshold for "carries support"; well below any tolerance in use
    // but above accumulated rounding noise of unit-norm states.
    constexpr double support_eps = 1e-14;

    MembershipReport report;
    Complex first{0.0, 0.0};
    for (Index s = 0; s < phi.size(); ++s) {
        if (std::abs(phi(s)) > support_eps) {
            if (first == Complex(0.0, 0.0)) first = phi(s);
            report.support = s + 1;
        }
    }
    // Divide out the global phase of the first nonzero component so that
    // scalar multiples of members are recognized. The sum scales by a nonzero
    // factor, so membership itself is unchanged; only the reported value is
    // phase-canonical.
    Complex phase(1.0, 0.0);
    if (first != Complex(0.0, 0.0)) phase = first / std::abs(first);
    Complex sum{0.0, 0.0};
    for (Index s = 0; s < phi.size(); ++s) sum += phi(s);
    report.coefficient_sum = sum / phase;
    report.in_domain = std::abs(report.coefficient_sum) <= tol;
    return report;
}

} // namespace ctclock
