#include "ctclock/errors.hpp"
#include "ctclock/io.hpp"
#include "ctclock/operators.hpp"
#include "ctclock/spectrum.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace ctclock;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("seventeen digits round-trip doubles exactly") {
    for (double x : {0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, 6.02e23,
                     -0.009999833334166664, 1.1449340668482262}) {
        CHECK(std::stod(format_sig17(x)) == x);
    }
}

TEST_CASE("matrix and state dumps") {
    Spectrum spec = harmonic_spectrum(1.0, 2);
    OperatorMatrix t = build_time_operator(spec, 2);

    SUBCASE("matrix layout is row,col,re,im in row-major order") {
        std::ostringstream out;
        write_matrix_csv(out, t);
        auto ls = lines_of(out.str());
        REQUIRE(ls.size() == 5);
        CHECK(ls[0] == "row,col,re,im");
        CHECK(ls[1] == "0,0,0,0");
        CHECK(ls[2] == "0,1,0,-1"); // i/omega_{0,1} = -i
        CHECK(ls[3] == "1,0,0,1");
        CHECK(ls[4] == "1,1,0,0");
    }
    SUBCASE("states are a single column") {
        StateVector v(2);
        v << Complex(0.5, -0.25), Complex(0.0, 1.0);
        std::ostringstream out;
        write_state_csv(out, v);
        auto ls = lines_of(out.str());
        REQUIRE(ls.size() == 3);
        CHECK(ls[1] == "0,0,0.5,-0.25");
        CHECK(ls[2] == "1,0,0,1");
    }
}

TEST_CASE("sweep table") {
    Spectrum spec = harmonic_spectrum(1.0, 8);
    std::vector<EvolvedObservableReport> rows{closed_report(1, 0, 0.25, 0, spec, 8),
                                              oracle_report(1, 0, 0.25, 0, spec, 8)};

    SUBCASE("csv header and method tags") {
        std::ostringstream out;
        write_sweep_csv(out, rows);
        auto ls = lines_of(out.str());
        REQUIRE(ls.size() == 3);
        CHECK(ls[0] == "tau,n,expectation,variance,method,M");
        CHECK(ls[1].find("closed_form") != std::string::npos);
        CHECK(ls[2].find("matrix_oracle") != std::string::npos);
        CHECK(ls[1].rfind("0.25,0,", 0) == 0);
        CHECK(ls[1].back() == '8');
    }
    SUBCASE("json carries the same numbers") {
        nlohmann::json arr = nlohmann::json::parse(sweep_json(rows));
        REQUIRE(arr.is_array());
        REQUIRE(arr.size() == 2);
        CHECK(arr[0]["tau"].get<double>() == 0.25);
        CHECK(arr[0]["expectation"].get<double>() == rows[0].expectation);
        CHECK(arr[0]["method"] == "closed_form");
        CHECK(arr[1]["method"] == "matrix_oracle");
        CHECK(arr[0]["M"].get<std::size_t>() == 8);
        CHECK(arr[0]["n"].get<long long>() == 0);
    }
}

TEST_CASE("clock table") {
    std::vector<ClockRow> rows(1);
    rows[0].t = 6.293185307179587;
    rows[0].tau_true = 0.01;
    rows[0].n = 1;
    rows[0].tau_linear = 0.009999833334166664;
    rows[0].tau_arcsin = 0.01;
    rows[0].shots = 100000;
    rows[0].uncertainty_product = 0.49997500041666527;
    rows[0].seed = 42;

    SUBCASE("csv") {
        std::ostringstream out;
        write_clock_csv(out, rows);
        auto ls = lines_of(out.str());
        REQUIRE(ls.size() == 2);
        CHECK(ls[0] == "t,tau_true,n,tau_linear,tau_arcsin,shots,uncertainty_product,seed");
        std::string expected = format_sig17(rows[0].t) + ",0.01,1," +
                               format_sig17(rows[0].tau_linear) + ",0.01,100000," +
                               format_sig17(rows[0].uncertainty_product) + ",42";
        CHECK(ls[1] == expected);
    }
    SUBCASE("json") {
        nlohmann::json arr = nlohmann::json::parse(clock_json(rows));
        REQUIRE(arr.size() == 1);
        CHECK(arr[0]["tau_true"].get<double>() == 0.01);
        CHECK(arr[0]["shots"].get<long long>() == 100000);
        CHECK(arr[0]["seed"].get<std::uint64_t>() == 42);
    }
}

TEST_CASE("stabilization table") {
    Spectrum spec = box_spectrum(1.0, 6);
    auto rows = gcd_stabilization(spec, 2, 6);

    SUBCASE("csv shows the gcd as an exact fraction") {
        std::ostringstream out;
        write_stabilization_csv(out, rows);
        auto ls = lines_of(out.str());
        REQUIRE(ls.size() == 6);
        CHECK(ls[0] == "n,gcd_p,gcd_q,stable");
        CHECK(ls[1] == "2,3,1,0");
        CHECK(ls[2] == "3,1,1,0");
        CHECK(ls[3] == "4,1,1,0");
        CHECK(ls[4] == "5,1,1,1");
        CHECK(ls[5] == "6,1,1,1");
    }
    SUBCASE("json") {
        nlohmann::json arr = nlohmann::json::parse(stabilization_json(rows));
        REQUIRE(arr.size() == 5);
        CHECK(arr[0]["gcd_p"] == "3");
        CHECK(arr[0]["stable"] == false);
        CHECK(arr[4]["stable"] == true);
    }
}

TEST_CASE("config parsing") {
    SUBCASE("harmonic with comments and blank lines") {
        std::istringstream in("# oscillator setup\nkind = harmonic\nomega = 2.0\n\n"
                              "n_levels = 8 # trailing comment\n");
        SpectrumConfig cfg = parse_spectrum_config(in);
        CHECK(cfg.kind == "harmonic");
        CHECK(cfg.omega == 2.0);
        CHECK(cfg.n_levels == 8);
        Spectrum spec = spectrum_from_config(cfg);
        CHECK(spec.label() == "harmonic");
        CHECK(spec.n_levels() == 8);
        CHECK(spec.energy(0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(spec.is_commensurable());
    }
    SUBCASE("colon separator works too") {
        std::istringstream in("kind: box\nn_levels: 4\n");
        Spectrum spec = spectrum_from_config(parse_spectrum_config(in));
        CHECK(spec.label() == "box");
        CHECK(spec.energy(3) == doctest::Approx(16.0).epsilon(1e-15));
    }
    SUBCASE("custom levels split on commas and spaces") {
        std::istringstream in("kind = custom\nlevels = 1/2, 3/2 7/2\n");
        Spectrum spec = spectrum_from_config(parse_spectrum_config(in));
        CHECK(spec.n_levels() == 3);
        CHECK(spec.rational_level(2) == Rational(7, 2));
        CHECK(spec.is_commensurable());
    }
    SUBCASE("irrational tokens flip the commensurability tag") {
        std::istringstream in("kind = custom\nlevels = 1 irr:1.4142135623730951\n");
        Spectrum spec = spectrum_from_config(parse_spectrum_config(in));
        CHECK_FALSE(spec.is_commensurable());
        CHECK(spec.f(1) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
    }
    SUBCASE("hbar rescales energies without touching the label") {
        std::istringstream in("kind = harmonic\nomega = 2.0\nhbar = 3.0\nn_levels = 2\n");
        Spectrum spec = spectrum_from_config(parse_spectrum_config(in));
        CHECK(spec.label() == "harmonic");
        CHECK(spec.hbar() == 3.0);
        CHECK(spec.energy(0) == doctest::Approx(3.0).epsilon(1e-15));
    }
    SUBCASE("rejects what it cannot read") {
        auto parse = [](const char* text) {
            std::istringstream in(text);
            return spectrum_from_config(parse_spectrum_config(in));
        };
        CHECK_THROWS_AS(parse("kind = harmonic\nfrequency = 2\n"), InvalidInput);
        CHECK_THROWS_AS(parse("just some words\n"), InvalidInput);
        CHECK_THROWS_AS(parse("kind = harmonic\nomega = fast\nn_levels = 4\n"), InvalidInput);
        CHECK_THROWS_AS(parse("kind = harmonic\nn_levels = few\n"), InvalidInput);
        CHECK_THROWS_AS(parse("kind = lattice\n"), InvalidInput);
        CHECK_THROWS_AS(parse("kind = harmonic\n"), InvalidSpectrum);
        CHECK_THROWS_AS(parse("kind = custom\nlevels = 1/2, oops\n"), InvalidInput);
    }
}

TEST_CASE("level tokens") {
    Level a = parse_level_token("3/4");
    REQUIRE(std::holds_alternative<Rational>(a));
    CHECK(std::get<Rational>(a) == Rational(3, 4));

    Level b = parse_level_token("irr:2.5");
    REQUIRE(std::holds_alternative<IrrationalLevel>(b));
    CHECK(std::get<IrrationalLevel>(b).approx == 2.5);

    CHECK_THROWS_AS(parse_level_token("two"), InvalidInput);
    CHECK_THROWS_AS(parse_level_token("irr:abc"), InvalidInput);
}

TEST_CASE("config files on disk") {
    std::string path = "ctclock_io_test_config.txt";
    {
        std::ofstream out(path);
        out << "kind = box\nomega = 1.0\nn_levels = 3\n";
    }
    Spectrum spec = spectrum_from_config(load_spectrum_config(path));
    CHECK(spec.label() == "box");
    CHECK(spec.n_levels() == 3);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_spectrum_config("no_such_directory/none.cfg"), IoError);
}
