#include "ctclock/operators.hpp"

#include "ctclock/errors.hpp"

#include <cmath>
#include <string>

namespace ctclock {

namespace {

void require_truncation(const Spectrum& spectrum, Index m) {
    if (m < 2) throw TruncationError("operators: truncation must be at least 2");
    if (static_cast<std::size_t>(m) > spectrum.n_levels())
        throw TruncationError("operators: truncation " + std::to_string(m) + " exceeds " +
                              std::to_string(spectrum.n_levels()) + " stored levels");
}

void check_hermitian(const OperatorMatrix& a) {
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol::exact * scale)
        throw ContractViolation("operators: matrix is not Hermitian (deviation " +
                                std::to_string(dev) + ")");
}

} // namespace

OperatorMatrix build_time_operator(const Spectrum& spectrum, Index m) {
    require_truncation(spectrum, m);
    OperatorMatrix t = OperatorMatrix::Zero(m, m);
    for (Index s = 0; s < m; ++s)
        for (Index sp = s + 1; sp < m; ++sp) {
            double w = spectrum.omega_between(static_cast<std::size_t>(s),
                                              static_cast<std::size_t>(sp));
            Complex entry(0.0, 1.0 / w);
            t(s, sp) = entry;
            t(sp, s) = std::conj(entry);
        }
    return t;
}

OperatorMatrix build_hamiltonian(const Spectrum& spectrum, Index m) {
    require_truncation(spectrum, m);
    OperatorMatrix h = OperatorMatrix::Zero(m, m);
    for (Index s = 0; s < m; ++s) h(s, s) = spectrum.energy(static_cast<std::size_t>(s));
    return h;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw DimensionMismatch("commutator: operands must be square and of equal size");
    return a * b - b * a;
}

OperatorMatrix project_pair(const OperatorMatrix& a, Index k, Index l) {
    if (k == l) throw IndexError("project_pair: indices must differ");
    if (k < 0 || l < 0 || k >= a.rows() || l >= a.rows())
        throw IndexError("project_pair: index out of range");
    OperatorMatrix p(2, 2);
    p << a(k, k), a(k, l), a(l, k), a(l, l);
    return p;
}

double ccr_residual(const OperatorMatrix& t, const OperatorMatrix& h, const StateVector& phi,
                    double hbar) {
    if (t.rows() != h.rows() || t.cols() != h.cols() || t.rows() != phi.size())
        throw DimensionMismatch("ccr_residual: operator and state sizes disagree");
    // (TH - HT) phi via matrix-vector products, O(M^2).
    StateVector r = t * (h * phi) - h * (t * phi) - Complex(0.0, hbar) * phi;
    return r.norm();
}

double expectation(const OperatorMatrix& a, const StateVector& phi) {
    if (a.rows() != phi.size())
        throw DimensionMismatch("expectation: operator and state sizes disagree");
    check_hermitian(a);
    Complex val = phi.dot(a * phi); // Eigen's dot conjugates the left argument
    if (std::abs(val.imag()) > tol::exact * std::max(1.0, std::abs(val.real())))
        throw ContractViolation("expectation: residual imaginary part " +
                                std::to_string(val.imag()));
    return val.real();
}

double variance(const OperatorMatrix& a, const StateVector& phi) {
    if (a.rows() != phi.size())
        throw DimensionMismatch("variance: operator and state sizes disagree");
    check_hermitian(a);
    StateVector w = a * phi;
    double mean_sq = w.squaredNorm(); // <A^2> = ||A phi||^2 for Hermitian A
    Complex mean = phi.dot(w);
    if (std::abs(mean.imag()) > tol::exact * std::max(1.0, std::abs(mean.real())))
        throw ContractViolation("variance: residual imaginary part in <A>");
    double var = mean_sq - mean.real() * mean.real();
    if (var < 0.0) {
        if (var < -tol::exact)
            throw ContractViolation("variance: negative beyond tolerance (" +
                                    std::to_string(var) + ")");
        var = 0.0;
    }
    return var;
}

} // namespace ctclock
