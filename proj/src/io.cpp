#include "ctclock/io.hpp"

#include "ctclock/errors.hpp"

#include "json.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ctclock {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput(std::string("config: bad ") + what + " value '" + s + "'");
    }
}

} // namespace

std::string format_sig17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_matrix_csv(std::ostream& os, const OperatorMatrix& a) {
    os << "row,col,re,im\n";
    for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c)
            os << r << ',' << c << ',' << format_sig17(a(r, c).real()) << ','
               << format_sig17(a(r, c).imag()) << '\n';
}

void write_state_csv(std::ostream& os, const StateVector& v) {
    os << "row,col,re,im\n";
    for (Index r = 0; r < v.size(); ++r)
        os << r << ",0," << format_sig17(v(r).real()) << ',' << format_sig17(v(r).imag())
           << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<EvolvedObservableReport>& rows) {
    os << "tau,n,expectation,variance,method,M\n";
    for (const auto& r : rows)
        os << format_sig17(r.tau) << ',' << r.n << ',' << format_sig17(r.expectation) << ','
           << format_sig17(r.variance) << ',' << method_name(r.method) << ',' << r.truncation
           << '\n';
}

std::string sweep_json(const std::vector<EvolvedObservableReport>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"tau", r.tau},
                       {"t", r.t},
                       {"n", r.n},
                       {"expectation", r.expectation},
                       {"variance", r.variance},
                       {"method", method_name(r.method)},
                       {"M", r.truncation}});
    return arr.dump(2);
}

void write_clock_csv(std::ostream& os, const std::vector<ClockRow>& rows) {
    os << "t,tau_true,n,tau_linear,tau_arcsin,shots,uncertainty_product,seed\n";
    for (const auto& r : rows)
        os << format_sig17(r.t) << ',' << format_sig17(r.tau_true) << ',' << r.n << ','
           << format_sig17(r.tau_linear) << ',' << format_sig17(r.tau_arcsin) << ','
           << r.shots << ',' << format_sig17(r.uncertainty_product) << ',' << r.seed << '\n';
}

std::string clock_json(const std::vector<ClockRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"t", r.t},
                       {"tau_true", r.tau_true},
                       {"n", r.n},
                       {"tau_linear", r.tau_linear},
                       {"tau_arcsin", r.tau_arcsin},
                       {"shots", r.shots},
                       {"uncertainty_product", r.uncertainty_product},
                       {"seed", r.seed}});
    return arr.dump(2);
}

void write_stabilization_csv(std::ostream& os, const std::vector<GcdRow>& rows) {
    os << "n,gcd_p,gcd_q,stable\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.gcd.num().str() << ',' << r.gcd.den().str() << ','
           << (r.stable ? 1 : 0) << '\n';
}

std::string stabilization_json(const std::vector<GcdRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n},
                       {"gcd_p", r.gcd.num().str()},
                       {"gcd_q", r.gcd.den().str()},
                       {"stable", r.stable}});
    return arr.dump(2);
}

SpectrumConfig parse_spectrum_config(std::istream& is) {
    SpectrumConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t sep = line.find('=');
        if (sep == std::string::npos) sep = line.find(':');
        if (sep == std::string::npos)
            throw InvalidInput("config: expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, sep));
        std::string value = trim(line.substr(sep + 1));
        if (key == "kind")
            cfg.kind = value;
        else if (key == "omega")
            cfg.omega = parse_double(value, "omega");
        else if (key == "hbar")
            cfg.hbar = parse_double(value, "hbar");
        else if (key == "n_levels") {
            try {
                std::size_t pos = 0;
                cfg.n_levels = static_cast<std::size_t>(std::stoull(value, &pos));
                if (pos != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw InvalidInput("config: bad n_levels value '" + value + "'");
            }
        }
        else if (key == "levels")
            cfg.level_tokens = split_tokens(value);
        else
            throw InvalidInput("config: unknown key '" + key + "'");
    }
    return cfg;
}

SpectrumConfig load_spectrum_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    return parse_spectrum_config(in);
}

Level parse_level_token(const std::string& token) {
    if (token.rfind("irr:", 0) == 0)
        return IrrationalLevel{parse_double(token.substr(4), "irrational level")};
    try {
        return Rational::parse(token);
    } catch (const Error&) {
        throw InvalidInput("config: level '" + token + "' is neither p/q nor irr:<float>");
    }
}

Spectrum spectrum_from_config(const SpectrumConfig& cfg) {
    if (cfg.kind == "harmonic") {
        if (cfg.n_levels < 2) throw InvalidSpectrum("config: harmonic needs n_levels >= 2");
        Spectrum base = harmonic_spectrum(cfg.omega, cfg.n_levels);
        if (cfg.hbar == 1.0) return base;
        std::vector<Level> levels;
        for (std::size_t s = 0; s < base.n_levels(); ++s) levels.push_back(base.level(s));
        return custom_spectrum(cfg.omega, cfg.hbar, std::move(levels),
                               Commensurability::commensurable, "harmonic");
    }
    if (cfg.kind == "box") {
        if (cfg.n_levels < 2) throw InvalidSpectrum("config: box needs n_levels >= 2");
        Spectrum base = box_spectrum(cfg.omega, cfg.n_levels);
        if (cfg.hbar == 1.0) return base;
        std::vector<Level> levels;
        for (std::size_t s = 0; s < base.n_levels(); ++s) levels.push_back(base.level(s));
        return custom_spectrum(cfg.omega, cfg.hbar, std::move(levels),
                               Commensurability::commensurable, "box");
    }
    if (cfg.kind == "custom") {
        std::vector<Level> levels;
        levels.reserve(cfg.level_tokens.size());
        for (const auto& tok : cfg.level_tokens) levels.push_back(parse_level_token(tok));
        return custom_spectrum(cfg.omega, cfg.hbar, std::move(levels),
                               Commensurability::commensurable, "custom");
    }
    throw InvalidInput("config: unknown kind '" + cfg.kind + "'");
}

} // namespace ctclock
