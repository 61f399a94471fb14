#include "ctclock/spectrum.hpp"

#include "ctclock/errors.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

namespace ctclock {

namespace {

double level_value(const Level& lv) {
    if (const auto* r = std::get_if<Rational>(&lv)) return r->to_double();
    return std::get<IrrationalLevel>(lv).approx;
}

} // namespace

Spectrum::Spectrum(double omega, double hbar, std::vector<Level> levels, Commensurability tag,
                   std::string label)
    : omega_(omega), hbar_(hbar), levels_(std::move(levels)), tag_(tag),
      label_(std::move(label)) {
    if (!(omega_ > 0.0) || !std::isfinite(omega_))
        throw InvalidSpectrum("spectrum: omega must be positive and finite");
    if (!(hbar_ > 0.0) || !std::isfinite(hbar_))
        throw InvalidSpectrum("spectrum: hbar must be positive and finite");
    if (levels_.size() < 2)
        throw InvalidSpectrum("spectrum: need at least two levels");
    for (std::size_t s = 0; s < levels_.size(); ++s) {
        double v = level_value(levels_[s]);
        if (!std::isfinite(v))
            throw InvalidSpectrum("spectrum: level " + std::to_string(s) + " is not finite");
        if (v == 0.0)
            throw InvalidSpectrum("spectrum: level " + std::to_string(s) +
                                  " is zero; zero eigenvalues are excluded");
        if (s > 0 && !(level_value(levels_[s - 1]) < v))
            throw InvalidSpectrum("spectrum: levels must be strictly increasing");
    }
    // A declared-irrational level makes the commensurable tag meaningless.
    if (tag_ == Commensurability::commensurable) {
        for (const auto& lv : levels_)
            if (std::holds_alternative<IrrationalLevel>(lv))
                throw InvalidSpectrum(
                    "spectrum: commensurable tag requires all levels rational");
    }
}

const Level& Spectrum::level(std::size_t s) const {
    if (s >= levels_.size())
        throw IndexError("spectrum: level index " + std::to_string(s) + " out of range");
    return levels_[s];
}

bool Spectrum::all_rational() const {
    for (const auto& lv : levels_)
        if (!std::holds_alternative<Rational>(lv)) return false;
    return true;
}

bool Spectrum::is_rational(std::size_t s) const {
    return std::holds_alternative<Rational>(level(s));
}

const Rational& Spectrum::rational_level(std::size_t s) const {
    const Level& lv = level(s);
    if (const auto* r = std::get_if<Rational>(&lv)) return *r;
    throw ContractViolation("spectrum: level " + std::to_string(s) +
                            " is irrational, no exact value");
}

double Spectrum::f(std::size_t s) const { return level_value(level(s)); }

double Spectrum::energy(std::size_t s) const { return hbar_ * omega_ * f(s); }

double Spectrum::omega_between(std::size_t s, std::size_t sp) const {
    if (is_rational(s) && is_rational(sp)) {
        Rational d = rational_level(s) - rational_level(sp);
        return omega_ * d.to_double();
    }
    return omega_ * (f(s) - f(sp));
}

Rational Spectrum::delta(std::size_t k, std::size_t l) const {
    return rational_level(k) - rational_level(l);
}

Spectrum harmonic_spectrum(double omega0, std::size_t n_levels) {
    std::vector<Level> levels;
    levels.reserve(n_levels);
    for (std::size_t s = 0; s < n_levels; ++s)
        levels.emplace_back(Rational(BigInt(2 * s + 1), BigInt(2))); // s + 1/2
    return Spectrum(omega0, 1.0, std::move(levels), Commensurability::commensurable,
                    "harmonic");
}

Spectrum box_spectrum(double scale, std::size_t n_levels) {
    std::vector<Level> levels;
    levels.reserve(n_levels);
    for (std::size_t s = 0; s < n_levels; ++s) {
        BigInt n(s + 1);
        levels.emplace_back(Rational(n * n));
    }
    return Spectrum(scale, 1.0, std::move(levels), Commensurability::commensurable, "box");
}

Spectrum custom_spectrum(double omega, double hbar, std::vector<Level> f_values,
                         Commensurability tag, std::string label) {
    for (const auto& lv : f_values)
        if (std::holds_alternative<IrrationalLevel>(lv)) {
            tag = Commensurability::incommensurate;
            break;
        }
    return Spectrum(omega, hbar, std::move(f_values), tag, std::move(label));
}

GrowthReport growth_condition_report(const Spectrum& spectrum, const ExtensionRule& rule) {
    GrowthReport report;
    report.partial_sums.reserve(spectrum.n_levels());
    double acc = 0.0;
    for (std::size_t s = 0; s < spectrum.n_levels(); ++s) {
        double e = spectrum.energy(s);
        acc += 1.0 / (e * e);
        report.partial_sums.push_back(acc);
    }

    if (!rule) return report;
    report.has_rule = true;

    // Extend sum E_s^-2 under the rule, checkpointing at doublings of the term
    // count. The sum converges iff the doubling increments shrink geometrically;
    // we accept when the last increment ratio is safely below 1.
    const double ho = spectrum.hbar() * spectrum.omega();
    double ext = report.partial_sums.back();
    std::vector<double> checkpoints{ext};
    std::size_t s = spectrum.n_levels();
    std::size_t next_checkpoint = 2 * spectrum.n_levels();
    const std::size_t cap = std::size_t(1) << 22;
    // Only full doublings become checkpoints; a trailing partial stretch up to
    // the cap would make the last increment small and bias the ratio test
    // toward convergence.
    while (next_checkpoint <= cap) {
        for (; s < next_checkpoint; ++s) {
            double fv = rule(s);
            if (!std::isfinite(fv) || fv == 0.0)
                throw InvalidSpectrum("growth report: extension rule produced invalid level");
            double e = ho * fv;
            ext += 1.0 / (e * e);
        }
        checkpoints.push_back(ext);
        next_checkpoint *= 2;
    }
    report.tail_estimate = ext - report.partial_sums.back();

    if (checkpoints.size() >= 3) {
        std::size_t n = checkpoints.size();
        double inc_prev = checkpoints[n - 2] - checkpoints[n - 3];
        double inc_last = checkpoints[n - 1] - checkpoints[n - 2];
        // Geometric decay of doubling increments: ratio 0.5 for f ~ s, ratio 1
        // (marginal divergence) for f ~ sqrt(s), ratio 2 for constant f. A last
        // increment of exactly zero means the terms dropped below double
        // resolution, which only happens for strongly convergent rules.
        if (inc_last == 0.0)
            report.plausible = true;
        else
            report.plausible = inc_prev > 0.0 && inc_last / inc_prev < 0.75;
    }
    return report;
}

} // namespace ctclock
