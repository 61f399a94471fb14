// Command-line front end: spectra in, CSV/JSON out.
// Exit codes: 0 success, 1 verification failure, 2 bad input, 3 IO trouble.

#include "ctclock/canonical.hpp"
#include "ctclock/clock.hpp"
#include "ctclock/dynamics.hpp"
#include "ctclock/errors.hpp"
#include "ctclock/io.hpp"
#include "ctclock/operators.hpp"
#include "ctclock/spectrum.hpp"
#include "ctclock/time_invariant.hpp"
#include "ctclock/verify.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

namespace {

using namespace ctclock;

struct RunConfig {
    std::string spectrum_kind;
    std::optional<double> omega;
    std::optional<double> hbar;
    std::optional<std::size_t> n_levels;
    std::string pair = "1,0";
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    long long shots = 0;
    double tau = 0.0;
    std::optional<double> tau_max;
    std::size_t steps = 200;
    long long cycles = 0;
    bool larmor = false;
    bool json_flag = false;
    std::string mutate;
};

void attach_spectrum_flags(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--spectrum", rc.spectrum_kind, "spectrum kind: harmonic|box|custom");
    sub->add_option("--omega", rc.omega, "base frequency omega (default 1)");
    sub->add_option("--hbar", rc.hbar, "hbar (default 1)");
    sub->add_option("--levels", rc.n_levels, "number of stored levels (default 32)");
    sub->add_option("--config", rc.config_path,
                    "spectrum config file (kind/omega/hbar/levels/n_levels); flags override");
}

void attach_output_flags(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--out", rc.out_path, "output file (default stdout)");
    sub->add_option("--format", rc.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

Spectrum resolve_spectrum(const RunConfig& rc) {
    SpectrumConfig cfg;
    cfg.kind = "harmonic";
    cfg.n_levels = 32;
    if (!rc.config_path.empty()) cfg = load_spectrum_config(rc.config_path);
    if (!rc.spectrum_kind.empty()) cfg.kind = rc.spectrum_kind;
    if (rc.omega) cfg.omega = *rc.omega;
    if (rc.hbar) cfg.hbar = *rc.hbar;
    if (rc.n_levels) cfg.n_levels = *rc.n_levels;
    if (cfg.kind.empty()) cfg.kind = "harmonic";
    return spectrum_from_config(cfg);
}

std::pair<std::size_t, std::size_t> resolve_pair(const RunConfig& rc,
                                                 const Spectrum& spectrum) {
    std::size_t k = 0, l = 0;
    char comma = 0;
    std::istringstream ss(rc.pair);
    if (!(ss >> k >> comma >> l) || comma != ',' || !(ss >> std::ws).eof())
        throw InvalidInput("bad --pair, expected k,l with k > l");
    if (k <= l) throw InvalidInput("bad --pair, need k > l");
    if (k >= spectrum.n_levels()) throw InvalidInput("--pair index exceeds stored levels");
    return {k, l};
}

// Writes through a file when --out is given, stdout otherwise.
int with_output(const RunConfig& rc, const std::function<void(std::ostream&)>& body) {
    if (rc.out_path.empty()) {
        body(std::cout);
        return 0;
    }
    std::ofstream out(rc.out_path);
    if (!out) throw IoError("cannot open output file '" + rc.out_path + "'");
    body(out);
    out.flush();
    if (!out) throw IoError("write failed on '" + rc.out_path + "'");
    return 0;
}

int cmd_tis(const RunConfig& rc) {
    Spectrum spectrum = resolve_spectrum(rc);
    std::size_t n = spectrum.n_levels();
    TimeInvariantSet set = invariant_set(spectrum, n);

    if (!set.is_lattice()) {
        if (rc.format == "json") {
            std::cout << "{\n  \"kind\": \"zero_only\"\n}\n";
        } else {
            std::cout << "T = {0}\n";
        }
        return 0;
    }

    Rational g = Rational(1) / *set.exact_base; // P = 2*pi/(omega*g)
    std::vector<GcdRow> table = gcd_stabilization(spectrum, 2, n);

    if (rc.format == "json") {
        std::ostringstream head;
        head << "{\n  \"kind\": \"lattice\",\n  \"P\": " << format_sig17(set.base_period)
             << ",\n  \"gcd\": \"" << g.str() << "\",\n  \"stabilization\": "
             << stabilization_json(table) << "\n}\n";
        return with_output(rc, [&](std::ostream& os) { os << head.str(); });
    }

    std::cout << "T = { j * P }, P = " << format_sig17(set.base_period) << " = 2*pi/(omega*"
              << g.str() << ")\n";
    return with_output(rc, [&](std::ostream& os) { write_stabilization_csv(os, table); });
}

int cmd_sweep(const RunConfig& rc) {
    Spectrum spectrum = resolve_spectrum(rc);
    auto [k, l] = resolve_pair(rc, spectrum);
    std::size_t m = spectrum.n_levels();
    double period = 2.0 * std::numbers::pi / std::abs(spectrum.omega_between(k, l));
    double tau_max = rc.tau_max.value_or(period);
    if (rc.steps == 0) throw InvalidInput("--steps must be positive");

    std::vector<EvolvedObservableReport> rows;
    rows.reserve(2 * rc.steps);
    for (std::size_t i = 0; i < rc.steps; ++i) {
        double tau = tau_max * static_cast<double>(i) / static_cast<double>(rc.steps);
        rows.push_back(closed_report(k, l, tau, rc.cycles, spectrum, m));
        rows.push_back(oracle_report(k, l, tau, rc.cycles, spectrum, m));
    }

    return with_output(rc, [&](std::ostream& os) {
        if (rc.format == "json")
            os << sweep_json(rows) << '\n';
        else
            write_sweep_csv(os, rows);
    });
}

int cmd_clock(const RunConfig& rc) {
    Spectrum spectrum = rc.larmor
                            ? larmor_spectrum(rc.omega.value_or(1.0), rc.hbar.value_or(1.0))
                            : resolve_spectrum(rc);
    auto [k, l] = rc.larmor ? std::pair<std::size_t, std::size_t>{1, 0}
                            : resolve_pair(rc, spectrum);
    ProjectedClock clock = make_projected_clock(spectrum, k, l);
    double period = clock.lattice.base_period;

    std::vector<double> taus;
    if (rc.tau_max) {
        for (std::size_t i = 0; i < rc.steps; ++i)
            taus.push_back(*rc.tau_max * static_cast<double>(i) /
                           static_cast<double>(rc.steps));
    } else {
        taus.push_back(rc.tau);
    }

    std::vector<ClockRow> rows;
    rows.reserve(taus.size());
    for (double tau : taus) {
        double t = tau + static_cast<double>(rc.cycles) * period;
        StateVector state = clock_state(clock, t);
        ClockReading reading = read_time(clock, state, rc.shots, rc.seed, rc.cycles);
        if (reading.uncertainty_product < 0.05 * clock.hbar)
            std::cerr << "warning: far from tick at tau = " << tau
                      << " (uncertainty product " << reading.uncertainty_product << ")\n";
        rows.push_back(ClockRow{t, tau, reading.n, reading.tau_linear, reading.tau_arcsin,
                                reading.shots, reading.uncertainty_product, rc.seed});
    }

    return with_output(rc, [&](std::ostream& os) {
        if (rc.format == "json")
            os << clock_json(rows) << '\n';
        else
            write_clock_csv(os, rows);
    });
}

int cmd_verify(const RunConfig& rc) {
    VerifyOptions opts;
    if (!rc.mutate.empty()) {
        std::istringstream ss(rc.mutate);
        char comma = 0;
        long long r = -1, c = -1;
        if (!(ss >> r >> comma >> c) || comma != ',' || !(ss >> std::ws).eof())
            throw InvalidInput("bad --mutate, expected r,c");
        if (r < 0 || c < 0 || r == c || r >= 64 || c >= 64)
            throw InvalidInput("--mutate indices must be distinct and in [0, 64)");
        opts.mutate = true;
        opts.mutate_r = static_cast<Index>(r);
        opts.mutate_c = static_cast<Index>(c);
    }

    std::vector<CheckResult> results = run_verification(opts);
    bool ok = all_passed(results);

    if (rc.json_flag || rc.format == "json") {
        std::cout << verification_json(results) << '\n';
    } else {
        for (const auto& res : results) {
            std::ostringstream line;
            line << (res.pass ? "PASS " : "FAIL ") << res.name;
            std::string pad(std::max<std::size_t>(1, 26 - res.name.size()), ' ');
            line << pad << res.detail << "  [" << std::fixed;
            line.precision(2);
            line << res.seconds << " s]";
            std::cout << line.str() << '\n';
        }
        std::cout << (ok ? "all checks passed" : "VERIFICATION FAILED") << '\n';
    }
    return ok ? 0 : 1;
}

int cmd_spectrum_check(const RunConfig& rc) {
    Spectrum spectrum = resolve_spectrum(rc);

    ExtensionRule rule;
    if (spectrum.label() == "harmonic")
        rule = [](std::size_t s) { return static_cast<double>(s) + 0.5; };
    else if (spectrum.label() == "box")
        rule = [](std::size_t s) { return std::pow(static_cast<double>(s) + 1.0, 2.0); };

    GrowthReport report = growth_condition_report(spectrum, rule);
    std::cout << "sum E_s^-2 over " << report.partial_sums.size()
              << " stored levels = " << format_sig17(report.partial_sums.back()) << '\n';
    if (report.has_rule) {
        std::cout << "extension tail estimate = " << format_sig17(report.tail_estimate)
                  << '\n'
                  << "growth condition plausible: " << (report.plausible ? "yes" : "no")
                  << '\n';
    } else {
        std::cout << "no extension rule for this spectrum; tail unknown\n";
    }

    if (!rc.out_path.empty())
        return with_output(rc, [&](std::ostream& os) {
            os << "s,partial_sum\n";
            for (std::size_t s = 0; s < report.partial_sums.size(); ++s)
                os << s << ',' << format_sig17(report.partial_sums[s]) << '\n';
        });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"characteristic time operator toolkit"};
    app.require_subcommand(1);

    RunConfig rc;

    CLI::App* tis = app.add_subcommand("tis", "time-invariant set and gcd stabilization");
    attach_spectrum_flags(tis, rc);
    attach_output_flags(tis, rc);

    CLI::App* sweep =
        app.add_subcommand("sweep", "closed-form and matrix-oracle tau sweep for a pair");
    attach_spectrum_flags(sweep, rc);
    attach_output_flags(sweep, rc);
    sweep->add_option("--pair", rc.pair, "level pair k,l with k > l (default 1,0)");
    sweep->add_option("--tau-max", rc.tau_max, "sweep end (default one period)");
    sweep->add_option("--steps", rc.steps, "grid points (default 200)");
    sweep->add_option("--cycles", rc.cycles, "whole periods added to each tau (default 0)");

    CLI::App* clock = app.add_subcommand("clock", "Larmor-style clock readout");
    attach_spectrum_flags(clock, rc);
    attach_output_flags(clock, rc);
    clock->add_option("--pair", rc.pair, "level pair k,l with k > l (default 1,0)");
    clock->add_flag("--larmor", rc.larmor, "two-level spin clock, H = omega S_z");
    clock->add_option("--tau", rc.tau, "time offset from the tick (default 0)");
    clock->add_option("--tau-max", rc.tau_max, "sweep readouts over [0, tau-max) instead");
    clock->add_option("--steps", rc.steps, "sweep grid points (default 200)");
    clock->add_option("--shots", rc.shots, "S_y samples; 0 = exact expectation");
    clock->add_option("--seed", rc.seed, "sampling seed (default 0)");
    clock->add_option("--cycles", rc.cycles, "caller-counted whole cycles n (default 0)");

    CLI::App* verify = app.add_subcommand("verify", "run the full verification battery");
    verify->add_option("--format", rc.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    verify->add_flag("--json", rc.json_flag, "machine-readable results");
    verify->add_option("--mutate", rc.mutate,
                       "fault injection r,c: flip the sign of T at (r,c),(c,r)");

    CLI::App* scheck =
        app.add_subcommand("spectrum-check", "growth condition report for a spectrum");
    attach_spectrum_flags(scheck, rc);
    attach_output_flags(scheck, rc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (tis->parsed()) return cmd_tis(rc);
        if (sweep->parsed()) return cmd_sweep(rc);
        if (clock->parsed()) return cmd_clock(rc);
        if (verify->parsed()) return cmd_verify(rc);
        if (scheck->parsed()) return cmd_spectrum_check(rc);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
