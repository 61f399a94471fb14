#include "ctclock/canonical.hpp"
#include "ctclock/errors.hpp"
#include "ctclock/operators.hpp"
#include "ctclock/spectrum.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace ctclock;

namespace {

StateVector random_state(Index m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    StateVector v(m);
    for (Index i = 0; i < m; ++i) v(i) = Complex(unif(rng), unif(rng));
    v.normalize();
    return v;
}

} // namespace

TEST_CASE("time operator entries and structure") {
    Spectrum spec = harmonic_spectrum(1.0, 4);
    OperatorMatrix t = build_time_operator(spec, 2);

    // omega_{0,1} = -1, so the (0,1) entry is i/(-1) = -i and (1,0) is +i
    CHECK(t(0, 0) == Complex(0.0, 0.0));
    CHECK(t(1, 1) == Complex(0.0, 0.0));
    CHECK(t(0, 1) == Complex(0.0, -1.0));
    CHECK(t(1, 0) == Complex(0.0, 1.0));

    OperatorMatrix t4 = build_time_operator(spec, 4);
    SUBCASE("exactly Hermitian, zero diagonal, purely imaginary") {
        CHECK((t4 - t4.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        for (Index s = 0; s < 4; ++s) {
            CHECK(t4(s, s) == Complex(0.0, 0.0));
            for (Index sp = 0; sp < 4; ++sp) CHECK(t4(s, sp).real() == 0.0);
        }
    }
    SUBCASE("antisymmetry of the imaginary part") {
        for (Index s = 0; s < 4; ++s)
            for (Index sp = 0; sp < 4; ++sp)
                CHECK(t4(s, sp).imag() == -t4(sp, s).imag());
    }

    CHECK_THROWS_AS(build_time_operator(spec, 5), TruncationError);
}

TEST_CASE("projected pair entry matches the two-level display") {
    // entry (0,1) of the (k,l)-ordered projection is i hbar/(E_k - E_l)
    Spectrum spec = harmonic_spectrum(1.0, 4);
    OperatorMatrix t = build_time_operator(spec, 4);
    OperatorMatrix tkl = project_pair(t, 1, 0);
    CHECK(tkl(0, 1) == Complex(0.0, 1.0)); // i/omega_{1,0} = i
    CHECK(tkl(1, 0) == Complex(0.0, -1.0));
    CHECK(tkl(0, 0) == Complex(0.0, 0.0));
}

TEST_CASE("hamiltonian is the energy diagonal") {
    Spectrum h = harmonic_spectrum(1.0, 4);
    OperatorMatrix hm = build_hamiltonian(h, 2);
    CHECK(hm(0, 0) == Complex(0.5, 0.0));
    CHECK(hm(1, 1) == Complex(1.5, 0.0));
    CHECK(hm(0, 1) == Complex(0.0, 0.0));

    Spectrum b = box_spectrum(1.0, 3);
    OperatorMatrix bm = build_hamiltonian(b, 3);
    CHECK(bm(0, 0).real() == 1.0);
    CHECK(bm(1, 1).real() == 4.0);
    CHECK(bm(2, 2).real() == 9.0);

    std::vector<Level> f{Level(Rational(1, 2)), Level(Rational(3, 4))};
    Spectrum c = custom_spectrum(2.0, 1.0, std::move(f), Commensurability::commensurable);
    OperatorMatrix cm = build_hamiltonian(c, 2);
    CHECK(cm(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cm(1, 1).real() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("commutator basics") {
    Spectrum spec = harmonic_spectrum(1.0, 8);
    OperatorMatrix h = build_hamiltonian(spec, 8);
    CHECK(commutator(h, h).cwiseAbs().maxCoeff() == 0.0);

    // Pauli algebra sanity: [sigma_y, sigma_z] = 2i sigma_x
    OperatorMatrix sy(2, 2), sz(2, 2), sx(2, 2);
    sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    sz << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
    sx << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    OperatorMatrix lhs = commutator(sy, sz);
    OperatorMatrix rhs = Complex(0, 2) * sx;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-15);

    OperatorMatrix small(2, 2);
    CHECK_THROWS_AS(commutator(h, small), DimensionMismatch);
}

TEST_CASE("ccr residual on and off the canonical domain") {
    Spectrum spec = harmonic_spectrum(1.0, 64);
    OperatorMatrix t = build_time_operator(spec, 64);
    OperatorMatrix h = build_hamiltonian(spec, 64);

    SUBCASE("pair vectors satisfy the relation exactly in truncation") {
        for (Index k : {1, 3, 8, 20}) {
            StateVector phi = normalized_pair_vector(k, 0, 64);
            CHECK(ccr_residual(t, h, phi) <= 1e-12);
        }
    }
    SUBCASE("a lone basis vector misses by hbar sqrt(M)") {
        StateVector phi = StateVector::Zero(64);
        phi(3) = 1.0;
        double r = ccr_residual(t, h, phi);
        CHECK(r > 0.5);
        CHECK(r == doctest::Approx(std::sqrt(64.0)).epsilon(1e-12));
    }
    SUBCASE("zero vector has zero residual") {
        StateVector phi = StateVector::Zero(64);
        CHECK(ccr_residual(t, h, phi) == 0.0);
    }
    SUBCASE("projected pair keeps the relation on phi_kl") {
        OperatorMatrix tkl = project_pair(t, 5, 2);
        OperatorMatrix hkl = project_pair(h, 5, 2);
        // phi_{k,l} in the (k, l)-ordered block is (1, -1)/sqrt2
        StateVector phi = normalized_pair_vector(0, 1, 2);
        CHECK(ccr_residual(tkl, hkl, phi) <= 1e-12);
    }
}

TEST_CASE("expectation and variance") {
    Spectrum spec = harmonic_spectrum(1.0, 16);
    OperatorMatrix t = build_time_operator(spec, 16);
    OperatorMatrix h = build_hamiltonian(spec, 16);

    SUBCASE("pair state basics") {
        StateVector phi = normalized_pair_vector(1, 0, 16);
        CHECK(expectation(t, phi) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(expectation(h, phi) == doctest::Approx(1.0).epsilon(1e-14)); // (E0+E1)/2
    }
    SUBCASE("eigenstate expectation is the eigenvalue") {
        StateVector e5 = StateVector::Zero(16);
        e5(5) = 1.0;
        CHECK(expectation(h, e5) == doctest::Approx(5.5).epsilon(1e-15));
        CHECK(variance(h, e5) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("projected H variance is the squared half gap") {
        OperatorMatrix hkl = project_pair(h, 1, 0);
        StateVector phi(2);
        phi << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(-1.0 / std::sqrt(2.0), 0.0);
        CHECK(variance(hkl, phi) == doctest::Approx(0.25).epsilon(1e-13)); // (E1-E0)^2/4
    }
    SUBCASE("non-Hermitian input rejected") {
        OperatorMatrix bad = t;
        bad(0, 1) = -bad(0, 1);
        StateVector phi = normalized_pair_vector(1, 0, 16);
        CHECK_THROWS_AS(expectation(bad, phi), ContractViolation);
        CHECK_THROWS_AS(variance(bad, phi), ContractViolation);
    }
    SUBCASE("variance nonnegative over random states") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 1000; ++i) {
            StateVector phi = random_state(16, rng);
            CHECK(variance(t, phi) >= 0.0);
        }
    }
}
