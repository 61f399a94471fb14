#include "ctclock/dynamics.hpp"

#include "ctclock/canonical.hpp"
#include "ctclock/errors.hpp"
#include "ctclock/operators.hpp"
#include "ctclock/time_invariant.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ctclock {

namespace {

void require_pair_in(std::size_t k, std::size_t l, std::size_t m, const char* who) {
    if (k == l) throw IndexError(std::string(who) + ": indices must differ");
    if (k >= m || l >= m) throw IndexError(std::string(who) + ": index out of range");
}

double pair_period(const Spectrum& spectrum, std::size_t k, std::size_t l) {
    return 2.0 * std::numbers::pi / std::abs(spectrum.omega_between(k, l));
}

} // namespace

StateVector evolve_state(const Spectrum& spectrum, const StateVector& phi, double t) {
    if (static_cast<std::size_t>(phi.size()) > spectrum.n_levels())
        throw TruncationError("evolve_state: state truncation exceeds stored levels");
    StateVector out(phi.size());
    for (Index s = 0; s < phi.size(); ++s) {
        double theta = spectrum.energy(static_cast<std::size_t>(s)) * t / spectrum.hbar();
        out(s) = phi(s) * std::polar(1.0, -theta);
    }
    return out;
}

OperatorMatrix heisenberg_T(const OperatorMatrix& t_op, const Spectrum& spectrum, double t) {
    Index m = t_op.rows();
    if (m != t_op.cols()) throw DimensionMismatch("heisenberg_T: operator must be square");
    if (static_cast<std::size_t>(m) > spectrum.n_levels())
        throw DimensionMismatch("heisenberg_T: operator exceeds stored levels");
    OperatorMatrix out(m, m);
    for (Index s = 0; s < m; ++s) {
        out(s, s) = t_op(s, s);
        for (Index sp = s + 1; sp < m; ++sp) {
            double w = spectrum.omega_between(static_cast<std::size_t>(s),
                                              static_cast<std::size_t>(sp));
            Complex e = t_op(s, sp) * std::polar(1.0, w * t);
            out(s, sp) = e;
            out(sp, s) = std::conj(e);
        }
    }
    return out;
}

double expectation_T_closed(std::size_t k, std::size_t l, double tau,
                            const Spectrum& spectrum) {
    require_pair_in(k, l, spectrum.n_levels(), "expectation_T_closed");
    double w = spectrum.omega_between(k, l);
    return std::sin(w * tau) / w;
}

double variance_T_closed(std::size_t k, std::size_t l, double tau, const Spectrum& spectrum,
                         std::size_t m) {
    require_pair_in(k, l, m, "variance_T_closed");
    if (m > spectrum.n_levels())
        throw TruncationError("variance_T_closed: truncation exceeds stored levels");
    double w = spectrum.omega_between(k, l);
    double c = std::cos(w * tau);
    double var = c * c / (w * w);
    double sum = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        if (s == k || s == l) continue;
        double wsk = spectrum.omega_between(s, k);
        double wsl = spectrum.omega_between(s, l);
        sum += 1.0 / (wsk * wsk) + 1.0 / (wsl * wsl) - 2.0 * c / (wsk * wsl);
    }
    return var + 0.5 * sum;
}

std::string method_name(Method m) {
    return m == Method::closed_form ? "closed_form" : "matrix_oracle";
}

EvolvedObservableReport oracle_report(std::size_t k, std::size_t l, double tau, long long n,
                                      const Spectrum& spectrum, std::size_t m) {
    require_pair_in(k, l, m, "oracle_report");
    OperatorMatrix t_op = build_time_operator(spectrum, static_cast<Index>(m));
    StateVector phi = normalized_pair_vector(static_cast<Index>(k), static_cast<Index>(l),
                                             static_cast<Index>(m));
    double t = tau + static_cast<double>(n) * pair_period(spectrum, k, l);
    StateVector psi = evolve_state(spectrum, phi, t);
    EvolvedObservableReport report;
    report.tau = tau;
    report.t = t;
    report.n = n;
    report.expectation = expectation(t_op, psi);
    report.variance = variance(t_op, psi);
    report.method = Method::matrix_oracle;
    report.truncation = m;
    return report;
}

EvolvedObservableReport closed_report(std::size_t k, std::size_t l, double tau, long long n,
                                      const Spectrum& spectrum, std::size_t m) {
    EvolvedObservableReport report;
    report.tau = tau;
    report.t = tau + static_cast<double>(n) * pair_period(spectrum, k, l);
    report.n = n;
    report.expectation = expectation_T_closed(k, l, tau, spectrum);
    report.variance = variance_T_closed(k, l, tau, spectrum, m);
    report.method = Method::closed_form;
    report.truncation = m;
    return report;
}

double short_time_defect(const Spectrum& spectrum, const StateVector& phi, double t) {
    if (std::abs(phi.norm() - 1.0) > tol::series)
        throw InvalidInput("short_time_defect: state must be normalized");
    StateVector exact = evolve_state(spectrum, phi, t);
    StateVector lin(phi.size());
    for (Index s = 0; s < phi.size(); ++s) {
        double w = spectrum.energy(static_cast<std::size_t>(s)) / spectrum.hbar();
        lin(s) = phi(s) * (Complex(1.0, 0.0) - Complex(0.0, w * t));
    }
    return (exact - lin).norm();
}

double covariance_defect(const Spectrum& spectrum, std::size_t k, std::size_t l, double tau,
                         long long n, std::size_t m) {
    require_pair_in(k, l, m, "covariance_defect");
    OperatorMatrix t_op = build_time_operator(spectrum, static_cast<Index>(m));
    double t = tau + static_cast<double>(n) * pair_period(spectrum, k, l);
    OperatorMatrix t_t = heisenberg_T(t_op, spectrum, t);
    StateVector phi = normalized_pair_vector(static_cast<Index>(k), static_cast<Index>(l),
                                             static_cast<Index>(m));
    StateVector r = t_t * phi - t_op * phi - tau * phi;
    return r.norm();
}

ExtrapolatedValue static_variance_extrapolated(std::size_t k, std::size_t l,
                                               const Spectrum& spectrum, std::size_t m) {
    if (4 * m > spectrum.n_levels())
        throw TruncationError("static_variance_extrapolated: need 4*m stored levels");
    double v1 = variance_T_closed(k, l, 0.0, spectrum, m);
    double v2 = variance_T_closed(k, l, 0.0, spectrum, 2 * m);
    double v3 = variance_T_closed(k, l, 0.0, spectrum, 4 * m);
    double d1 = v2 - v1;
    double d2 = v3 - v2;
    ExtrapolatedValue out;
    if (d1 == 0.0 || d2 == 0.0) { // already converged
        out.value = v3;
        return out;
    }
    double r = d2 / d1;
    if (r >= 1.0) throw ContractViolation("static_variance_extrapolated: tail not decreasing");
    double correction = d2 * r / (1.0 - r);
    out.value = v3 + correction;
    out.error_bar = std::abs(correction);
    return out;
}

} // namespace ctclock
