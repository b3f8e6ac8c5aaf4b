#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/io.hpp"
#include "riesz/measures.hpp"
#include "riesz/rng.hpp"

#include <sstream>

using namespace riesz;

TEST_CASE("format_double round-trips exactly") {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.gaussian() * std::pow(10.0, rng.uniform_int(-12, 12));
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("coefficient files: parse, comments, round trip") {
    std::istringstream in("# header comment\n1 0\n\n0.5 -2.25\n");
    const AnalyticPoly f = read_coefficients(in);
    REQUIRE(f.degree() == 1);
    CHECK(f.coeff(0) == Complex(1.0, 0.0));
    CHECK(f.coeff(1) == Complex(0.5, -2.25));

    Rng rng(2);
    std::vector<Complex> coeffs(7);
    for (auto& c : coeffs) c = rng.complex_gaussian();
    const AnalyticPoly g(std::move(coeffs));
    std::stringstream buffer;
    write_coefficients(buffer, g);
    CHECK(read_coefficients(buffer) == g);

    std::istringstream bad("1 0\nnot numbers\n");
    CHECK_THROWS_AS(read_coefficients(bad), std::runtime_error);
    std::istringstream empty("# only a comment\n");
    CHECK_THROWS_AS(read_coefficients(empty), std::runtime_error);
}

TEST_CASE("trig poly text: constant term, negative indices, round trip") {
    std::istringstream in(": 3 0\n1 -2 : 0 1\n");
    const TrigPoly t = read_trig_poly(in);
    CHECK(t.coefficient(MultiIndex{}) == Complex(3.0));
    CHECK(t.coefficient(MultiIndex{1, -2}) == Complex(0.0, 1.0));

    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const TrigPoly random = random_trig_poly(rng, 3, 4, 6);
        std::stringstream buffer;
        write_trig_poly(buffer, random);
        CHECK(read_trig_poly(buffer) == random);
    }

    std::istringstream bad("no colon here\n");
    CHECK_THROWS_AS(read_trig_poly(bad), std::runtime_error);
}

TEST_CASE("measure files: atoms plus density round trip") {
    std::istringstream in(
        "atoms 2\n"
        "0 1 0\n"
        "3.14159 0 -1\n"
        "density\n"
        ": 1 0\n"
        "1 : 0.5 0\n");
    const CircleMeasure mu = read_measure(in);
    REQUIRE(mu.atoms().size() == 2);
    CHECK(mu.atoms()[0].weight == Complex(1.0));
    CHECK(mu.atoms()[1].weight == Complex(0.0, -1.0));
    CHECK(mu.density().coefficient(MultiIndex{1}) == Complex(0.5));

    std::stringstream buffer;
    write_measure(buffer, mu);
    const CircleMeasure back = read_measure(buffer);
    REQUIRE(back.atoms().size() == 2);
    CHECK(back.atoms()[1].angle == mu.atoms()[1].angle);
    CHECK(back.density() == mu.density());

    std::istringstream missing("atoms 1\n0 1 0\n");
    CHECK_THROWS_AS(read_measure(missing), std::runtime_error);
    std::istringstream wrong_header("points 1\n");
    CHECK_THROWS_AS(read_measure(wrong_header), std::runtime_error);
}
