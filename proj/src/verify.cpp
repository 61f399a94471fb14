#include "ctclock/verify.hpp"

#include "ctclock/canonical.hpp"
#include "ctclock/clock.hpp"
#include "ctclock/dynamics.hpp"
#include "ctclock/errors.hpp"
#include "ctclock/operators.hpp"
#include "ctclock/spectrum.hpp"
#include "ctclock/time_invariant.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace ctclock {

namespace {

using Clock = std::chrono::steady_clock;

constexpr Index work_m = 64;

OperatorMatrix build_t(const Spectrum& spectrum, Index m, const VerifyOptions& opts) {
    OperatorMatrix t = build_time_operator(spectrum, m);
    if (opts.mutate) {
        if (opts.mutate_r == opts.mutate_c || opts.mutate_r < 0 || opts.mutate_c < 0 ||
            opts.mutate_r >= m || opts.mutate_c >= m)
            throw InvalidInput("mutation indices must be distinct and below " +
                               std::to_string(m));
        t(opts.mutate_r, opts.mutate_c) = -t(opts.mutate_r, opts.mutate_c);
        t(opts.mutate_c, opts.mutate_r) = -t(opts.mutate_c, opts.mutate_r);
    }
    return t;
}

std::string sci(double x) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << x;
    return ss.str();
}

// 1. CCR exactness on the canonical domain at truncation 64.
CheckResult check_ccr(const VerifyOptions& opts) {
    CheckResult res{"ccr_exactness", false, "", 0.0};
    Spectrum spec = harmonic_spectrum(1.0, static_cast<std::size_t>(work_m));
    OperatorMatrix t = build_t(spec, work_m, opts);
    OperatorMatrix h = build_hamiltonian(spec, work_m);

    double worst = 0.0;
    int count = 0;
    for (Index k = 1; k <= 8; ++k)
        for (Index l = 0; l < k; ++l) {
            worst = std::max(worst, ccr_residual(t, h, normalized_pair_vector(k, l, work_m)));
            ++count;
        }

    std::mt19937_64 rng(0x5eedull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int v = 0; v < 100; ++v) {
        std::map<std::pair<Index, Index>, Complex> terms;
        int n_terms = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n_terms; ++i) {
            Index k = 1 + static_cast<Index>(rng() % (work_m - 1));
            Index l = static_cast<Index>(rng() % k);
            terms[{k, l}] += Complex(unif(rng), unif(rng));
        }
        StateVector phi = assemble(terms, work_m).assembled;
        if (phi.norm() < 1e-6) continue; // freak cancellation, skip
        phi.normalize();
        worst = std::max(worst, ccr_residual(t, h, phi));
        ++count;
    }

    // Deterministic chain touching every level, so a sign flip anywhere in T
    // shows up here. Damped coefficients keep ||H phi|| modest.
    {
        std::map<std::pair<Index, Index>, Complex> chain;
        for (Index s = 0; s + 1 < work_m; ++s)
            chain[{s + 1, s}] = Complex(1.0 / double((s + 1) * (s + 1)), 0.0);
        StateVector phi = assemble(chain, work_m).assembled;
        phi.normalize();
        worst = std::max(worst, ccr_residual(t, h, phi));
        ++count;
    }

    res.pass = worst <= tol::exact;
    res.detail = "max residual " + sci(worst) + " over " + std::to_string(count) +
                 " canonical vectors, M=64";
    return res;
}

// 2. Lattice taxonomy, exact arithmetic only.
CheckResult check_taxonomy(const VerifyOptions&) {
    CheckResult res{"time_invariant_taxonomy", false, "", 0.0};
    Spectrum harm = harmonic_spectrum(1.0, 32);
    TimeInvariantSet sh = invariant_set(harm, 32);
    bool ok_h = sh.is_lattice() && sh.exact_base && *sh.exact_base == Rational(1) &&
                sh.base_period == 2.0 * std::numbers::pi;

    Spectrum box = box_spectrum(1.0, 16);
    TimeInvariantSet sb = invariant_set(box, 16);
    bool ok_b = sb.is_lattice() && sb.exact_base && *sb.exact_base == Rational(1);

    std::vector<Level> mixed{Level(Rational(1)), Level(Rational(2)),
                             Level(IrrationalLevel{1.0 + std::numbers::sqrt2})};
    Spectrum irr = custom_spectrum(1.0, 1.0, std::move(mixed),
                                   Commensurability::incommensurate, "mixed");
    TimeInvariantSet si = invariant_set(irr, 3);
    bool ok_i = !si.is_lattice();

    res.pass = ok_h && ok_b && ok_i;
    res.detail = std::string("harmonic P=2pi ") + (ok_h ? "ok" : "FAIL") + ", box gcd=1 " +
                 (ok_b ? "ok" : "FAIL") + ", irrational -> {0} " + (ok_i ? "ok" : "FAIL");
    return res;
}

// 3. Closed forms vs matrix oracle, plus the extrapolated static variance.
CheckResult check_closed_vs_oracle(const VerifyOptions&) {
    CheckResult res{"closed_vs_oracle", false, "", 0.0};
    Spectrum spec = harmonic_spectrum(1.0, 256);
    const std::size_t k = 1, l = 0, m = 128;
    double period = 2.0 * std::numbers::pi;
    double dev = 0.0;
    for (int i = 0; i < 200; ++i) {
        double tau = period * i / 200.0;
        EvolvedObservableReport closed = closed_report(k, l, tau, 0, spec, m);
        EvolvedObservableReport oracle = oracle_report(k, l, tau, 0, spec, m);
        dev = std::max(dev, std::abs(closed.expectation - oracle.expectation));
        dev = std::max(dev, std::abs(closed.variance - oracle.variance));
    }

    // Independent limit: Var T on phi_{1,0} at tau=0 tends to
    // 1 + (1/2) sum_{m>=1} 1/(m^2 (m+1)^2), and the sum telescopes to
    // pi^2/3 - 3.
    double limit = 1.0 + 0.5 * (std::numbers::pi * std::numbers::pi / 3.0 - 3.0);
    ExtrapolatedValue ev = static_variance_extrapolated(k, l, spec, 64);
    double err = std::abs(ev.value - limit);

    res.pass = dev <= 1e-10 && err <= 1e-4;
    res.detail = "grid dev " + sci(dev) + ", extrapolated static variance off by " + sci(err);
    return res;
}

// 4. Exact-expectation clock readout and uncertainty saturation.
CheckResult check_clock_readout(const VerifyOptions&) {
    CheckResult res{"clock_readout", false, "", 0.0};
    Spectrum spec = harmonic_spectrum(1.0, 8);
    ProjectedClock clock = make_projected_clock(spec, 1, 0); // omega_kl = 1
    double worst_tau = 0.0, worst_up = 0.0;
    for (double tau : {0.001, 0.01, 0.05}) {
        ClockReading r = read_time(clock, clock_state(clock, tau), 0, 0);
        worst_tau = std::max(worst_tau, std::abs(r.tau_arcsin - tau));
        worst_up = std::max(worst_up,
                            std::abs(r.uncertainty_product - 0.5 * std::abs(std::cos(tau))));
    }
    double sat = std::abs(uncertainty_product(clock, 0.0) - 0.5);
    res.pass = worst_tau <= tol::exact && worst_up <= tol::exact && sat <= tol::exact;
    res.detail = "arcsin dev " + sci(worst_tau) + ", uncertainty dev " + sci(worst_up) +
                 ", saturation dev " + sci(sat);
    return res;
}

// 5. T_t = T + tau + O(tau^2) near the lattice.
CheckResult check_covariance(const VerifyOptions&) {
    CheckResult res{"covariance_near_ticks", false, "", 0.0};
    Spectrum spec = harmonic_spectrum(1.0, static_cast<std::size_t>(work_m));
    const std::size_t k = 1, l = 0, m = 64;
    double d1 = covariance_defect(spec, k, l, 1e-2, 0, m);
    double d2 = covariance_defect(spec, k, l, 5e-3, 0, m);
    double d3 = covariance_defect(spec, k, l, 2.5e-3, 0, m);
    double r12 = d1 / d2, r23 = d2 / d3;
    bool order_ok = r12 >= 3.8 && r12 <= 4.2 && r23 >= 3.8 && r23 <= 4.2;

    double worst_tick = 0.0;
    for (long long j : {0ll, 1ll, -1ll, 2ll, -2ll})
        worst_tick = std::max(worst_tick, covariance_defect(spec, k, l, 0.0, j, m));

    res.pass = order_ok && worst_tick <= tol::exact;
    res.detail = "halving ratios " + sci(r12) + ", " + sci(r23) + "; defect on ticks " +
                 sci(worst_tick);
    return res;
}

// 6. Short-time defect constant for phi_{1,0}.
CheckResult check_short_time(const VerifyOptions&) {
    CheckResult res{"short_time_constant", false, "", 0.0};
    Spectrum spec = harmonic_spectrum(1.0, 8);
    StateVector phi = normalized_pair_vector(1, 0, 8);
    double t = 1e-3;
    double defect = short_time_defect(spec, phi, t);
    // Leading order: ||(e^{-i w t} - 1 + i w t) phi|| = t^2 sqrt(sum |phi_s|^2 (w_s^2/2)^2)
    double w0 = spec.energy(0), w1 = spec.energy(1);
    double constant =
        std::sqrt(0.5 * (std::pow(w0 * w0 / 2.0, 2) + std::pow(w1 * w1 / 2.0, 2)));
    double ratio = defect / (t * t);
    res.pass = std::abs(ratio / constant - 1.0) <= 0.01;
    res.detail = "defect/t^2 = " + sci(ratio) + " vs " + sci(constant);
    return res;
}

// 7. Larmor protocol: sampled readout, coverage, eigenstate transition.
CheckResult check_larmor(const VerifyOptions&) {
    CheckResult res{"larmor_protocol", false, "", 0.0};
    Spectrum spec = larmor_spectrum(1.0);
    ProjectedClock clock = make_projected_clock(spec, 1, 0);
    const double tau = 0.01;
    StateVector state = clock_state(clock, tau);

    auto sigma_tau = [&](long long shots) {
        double p = 0.5 * (1.0 - std::sin(tau));
        return 2.0 * std::sqrt(p * (1.0 - p) / double(shots)) / std::abs(std::cos(tau));
    };

    ClockReading big = read_time(clock, state, 1000000, 424242);
    bool big_ok = std::abs(big.tau_arcsin - tau) <= 3.0 * sigma_tau(1000000);

    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        ClockReading r = read_time(clock, state, 10000, seed);
        if (std::abs(r.tau_arcsin - tau) <= 3.0 * sigma_tau(10000)) ++covered;
    }

    TransitionReport tr = eigenstate_transition_time(clock);
    bool trans_ok = std::abs(tr.transition_time - std::numbers::pi) <= 1e-6 &&
                    std::abs(tr.eigenvalue_difference - 2.0) <= tol::exact;

    res.pass = big_ok && covered >= 95 && trans_ok;
    res.detail = "1e6-shot dev " + sci(std::abs(big.tau_arcsin - tau)) + " (3sigma " +
                 sci(3.0 * sigma_tau(1000000)) + "), coverage " + std::to_string(covered) +
                 "/100, transition " + sci(tr.transition_time) + " vs eigenvalue gap " +
                 sci(tr.eigenvalue_difference);
    return res;
}

// 8. Resolution formulas for three spectra.
CheckResult check_resolution(const VerifyOptions&) {
    CheckResult res{"resolution_report", false, "", 0.0};
    double worst = 0.0;
    auto probe = [&](const Spectrum& spec, std::size_t k, std::size_t l) {
        ProjectedClock clock = make_projected_clock(spec, k, l);
        ResolutionReport rr = resolution_report(clock);
        double gap = spec.energy(k) - spec.energy(l);
        worst = std::max(worst, std::abs(rr.delta_t - 2.0 * std::numbers::pi * spec.hbar() / gap));
        worst = std::max(worst, std::abs(rr.delta_T_at_tick - spec.hbar() / gap));
        worst = std::max(worst, std::abs(rr.delta_t / rr.delta_T_at_tick -
                                         2.0 * std::numbers::pi));
    };
    probe(harmonic_spectrum(1.0, 4), 1, 0);   // gap 1: dt = 2pi, dT = 1
    probe(box_spectrum(1.0, 4), 1, 0);        // gap 3
    std::vector<Level> f{Level(Rational(1, 2)), Level(Rational(3, 4)), Level(Rational(1))};
    probe(custom_spectrum(2.0, 1.0, std::move(f), Commensurability::commensurable), 2, 0);

    Spectrum harm = harmonic_spectrum(1.0, 4);
    ProjectedClock hc = make_projected_clock(harm, 1, 0);
    ResolutionReport hr = resolution_report(hc);
    bool literal = hr.delta_t == 2.0 * std::numbers::pi && hr.delta_T_at_tick == 1.0;

    res.pass = worst <= tol::exact && literal;
    res.detail = "max deviation " + sci(worst) + std::string(literal ? "" : ", literal FAIL");
    return res;
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    using CheckFn = std::function<CheckResult(const VerifyOptions&)>;
    struct Entry {
        const char* name;
        CheckFn fn;
        double budget_s; // runtime contract; 0 = unbounded
    };
    const Entry entries[] = {
        {"ccr_exactness", check_ccr, 1.0},
        {"time_invariant_taxonomy", check_taxonomy, 0.0},
        {"closed_vs_oracle", check_closed_vs_oracle, 10.0},
        {"clock_readout", check_clock_readout, 0.0},
        {"covariance_near_ticks", check_covariance, 0.0},
        {"short_time_constant", check_short_time, 0.0},
        {"larmor_protocol", check_larmor, 30.0},
        {"resolution_report", check_resolution, 0.0},
    };

    std::vector<CheckResult> results;
    for (const auto& entry : entries) {
        auto t0 = Clock::now();
        CheckResult res;
        try {
            res = entry.fn(opts);
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.name = entry.name;
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (entry.budget_s > 0.0 && res.seconds > entry.budget_s) {
            res.pass = false;
            res.detail += "; runtime " + sci(res.seconds) + " s over budget " +
                          sci(entry.budget_s) + " s";
        }
        results.push_back(std::move(res));
    }
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

std::string verification_json(const std::vector<CheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
        arr.push_back({{"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
    nlohmann::json out{{"checks", arr}, {"all_passed", all_passed(results)}};
    return out.dump(2);
}

} // namespace ctclock
