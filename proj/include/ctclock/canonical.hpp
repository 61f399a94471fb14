#pragma once

#include "ctclock/types.hpp"

#include <map>
#include <utility>

namespace ctclock {

/// |k> - |l> written out at truncation m: +1 at k, -1 at l, unnormalized.
StateVector pair_vector(Index k, Index l, Index m);

/// phi_{k,l} = 2^{-1/2}(|k> - |l>), the unit-norm variant.
StateVector normalized_pair_vector(Index k, Index l, Index m);

/// Finite combination sum a_{kl} (|k> - |l>). The pair coefficients are kept
/// next to the assembled vector so callers can reconstruct or perturb terms.
struct CanonicalVector {
    std::map<std::pair<Index, Index>, Complex> coefficients; // keys (k, l), k > l
    StateVector assembled;
};

CanonicalVector assemble(const std::map<std::pair<Index, Index>, Complex>& a_map, Index m);

struct MembershipReport {
    bool in_domain = false;
    /// Coefficient sum after dividing out the global phase of the first
    /// nonzero component; |coefficient_sum| is the distance proxy to D_c.
    Complex coefficient_sum{0.0, 0.0};
    /// One past the highest index carrying weight (0 for the zero vector).
    Index support = 0;
};

/// Zero-coefficient-sum test, insensitive to global phase: a scalar multiple
/// of a member is a member.
MembershipReport membership_test(const StateVector& phi, double tol = tol::membership);

} // namespace ctclock
