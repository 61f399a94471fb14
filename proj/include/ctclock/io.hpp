#pragma once

#include "ctclock/dynamics.hpp"
#include "ctclock/spectrum.hpp"
#include "ctclock/time_invariant.hpp"
#include "ctclock/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctclock {

/// 17 significant digits, enough to round-trip a double exactly.
std::string format_sig17(double x);

/// Dense dump, header `row,col,re,im`, row-major.
void write_matrix_csv(std::ostream& os, const OperatorMatrix& a);

/// Vectors use the matrix format with col = 0.
void write_state_csv(std::ostream& os, const StateVector& v);

void write_sweep_csv(std::ostream& os, const std::vector<EvolvedObservableReport>& rows);
std::string sweep_json(const std::vector<EvolvedObservableReport>& rows);

/// One clock reading per line.
struct ClockRow {
    double t = 0.0;
    double tau_true = 0.0;
    long long n = 0;
    double tau_linear = 0.0;
    double tau_arcsin = 0.0;
    long long shots = 0;
    double uncertainty_product = 0.0;
    std::uint64_t seed = 0;
};

void write_clock_csv(std::ostream& os, const std::vector<ClockRow>& rows);
std::string clock_json(const std::vector<ClockRow>& rows);

void write_stabilization_csv(std::ostream& os, const std::vector<GcdRow>& rows);
std::string stabilization_json(const std::vector<GcdRow>& rows);

/// Plain-text key/value config for spectra. Keys: kind (harmonic|box|custom),
/// omega, hbar, n_levels, levels (comma or space separated `p/q` or
/// `irr:<float>` tokens, custom only). `#` starts a comment.
struct SpectrumConfig {
    std::string kind;
    double omega = 1.0;
    double hbar = 1.0;
    std::size_t n_levels = 0;
    std::vector<std::string> level_tokens;
};

SpectrumConfig parse_spectrum_config(std::istream& is);
SpectrumConfig load_spectrum_config(const std::string& path);

/// `p/q` (exact) or `irr:<float>` (declared irrational).
Level parse_level_token(const std::string& token);

Spectrum spectrum_from_config(const SpectrumConfig& config);

} // namespace ctclock
