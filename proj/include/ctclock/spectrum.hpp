#pragma once

#include "ctclock/rational.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace ctclock {

/// Marker for a level value that is declared irrational; only the floating
/// approximation is available. Incommensurability is declared, never inferred.
struct IrrationalLevel {
    double approx = 0.0;
};

/// One dimensionless level value f(s).
using Level = std::variant<Rational, IrrationalLevel>;

enum class Commensurability { commensurable, incommensurate };

/// Ordered non-degenerate energy spectrum E_s = hbar * omega * f(s).
///
/// The levels are a finite truncation of the (conceptually infinite)
/// spectrum; every downstream result is reported at the stored truncation.
/// Immutable after construction.
class Spectrum {
  public:
    Spectrum(double omega, double hbar, std::vector<Level> levels, Commensurability tag,
             std::string label);

    double omega() const { return omega_; }
    double hbar() const { return hbar_; }
    const std::string& label() const { return label_; }
    Commensurability commensurability() const { return tag_; }
    bool is_commensurable() const { return tag_ == Commensurability::commensurable; }

    std::size_t n_levels() const { return levels_.size(); }
    const Level& level(std::size_t s) const;

    bool all_rational() const;
    bool is_rational(std::size_t s) const;

    /// Exact f(s); throws ContractViolation if level s is irrational.
    const Rational& rational_level(std::size_t s) const;

    /// f(s) as a double (exact value rounded, or the declared approximation).
    double f(std::size_t s) const;

    /// E_s = hbar * omega * f(s).
    double energy(std::size_t s) const;

    /// omega_{s,s'} = (E_s - E_{s'}) / hbar = omega * (f(s) - f(s')).
    /// Uses the exact rational difference when both levels are rational.
    double omega_between(std::size_t s, std::size_t sp) const;

    /// Exact f(k) - f(l); throws ContractViolation unless both are rational.
    Rational delta(std::size_t k, std::size_t l) const;

  private:
    double omega_;
    double hbar_;
    std::vector<Level> levels_;
    Commensurability tag_;
    std::string label_;
};

/// Harmonic-oscillator levels f(s) = s + 1/2, exact rationals.
Spectrum harmonic_spectrum(double omega0, std::size_t n_levels);

/// Particle-in-a-box levels f(s) = (s+1)^2, exact rationals.
Spectrum box_spectrum(double scale, std::size_t n_levels);

/// Arbitrary user-supplied levels. An irrational level forces the
/// incommensurate tag regardless of the one passed in.
Spectrum custom_spectrum(double omega, double hbar, std::vector<Level> f_values,
                         Commensurability tag, std::string label = "custom");

/// Closed form for f(s) beyond the stored levels, used to estimate the tail
/// of sum E_s^-2.
using ExtensionRule = std::function<double(std::size_t)>;

struct GrowthReport {
    /// partial_sums[i] = sum_{s<=i} E_s^-2 over the stored levels.
    std::vector<double> partial_sums;
    bool has_rule = false;
    /// Sum of the rule terms beyond the stored levels (lower bound on the tail).
    double tail_estimate = 0.0;
    /// True when the extension partial sums look Cauchy (doubling increments
    /// shrink), i.e. the growth condition sum E_s^-2 < inf is plausible.
    bool plausible = false;
};

/// Report-only check of the growth condition sum_s E_s^-2 < inf at the stored
/// truncation, with an optional tail estimate under an extension rule.
GrowthReport growth_condition_report(const Spectrum& spectrum, const ExtensionRule& rule = {});

} // namespace ctclock
