#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/rng.hpp"
#include "riesz/roots.hpp"

#include <algorithm>
#include <cmath>

using namespace riesz;

namespace {

AnalyticPoly poly_from_roots(const std::vector<Complex>& roots, Complex leading) {
    std::vector<Complex> coeffs{leading};
    for (const auto& root : roots) {
        std::vector<Complex> next(coeffs.size() + 1, Complex(0.0));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] += coeffs[k];
            next[k] -= coeffs[k] * root;
        }
        coeffs = std::move(next);
    }
    return AnalyticPoly(std::move(coeffs));
}

double match_residual(std::vector<Complex> found, std::vector<Complex> planted) {
    REQUIRE(found.size() == planted.size());
    double worst = 0.0;
    for (const auto& f : found) {
        double best = 1e300;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < planted.size(); ++i) {
            if (std::abs(f - planted[i]) < best) {
                best = std::abs(f - planted[i]);
                arg = i;
            }
        }
        planted.erase(planted.begin() + static_cast<std::ptrdiff_t>(arg));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("linear and quadratic closed forms") {
    const auto lin = polynomial_roots(AnalyticPoly{1.0, 1.0});
    REQUIRE(lin.size() == 1);
    CHECK(std::abs(lin[0] - Complex(-1.0)) < 1e-12);

    const auto quad = polynomial_roots(AnalyticPoly{-1.0 / 16.0, 0.0, 1.0});
    REQUIRE(quad.size() == 2);
    CHECK(std::abs(quad[0] - Complex(-0.25)) + std::abs(quad[1] - Complex(0.25)) <
          2e-12);
}

TEST_CASE("roots at the origin come from exact zero coefficients") {
    const auto roots = polynomial_roots(AnalyticPoly{0.0, 0.0, 1.0});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == Complex(0.0));
    CHECK(roots[1] == Complex(0.0));

    const auto mixed = polynomial_roots(AnalyticPoly{0.0, -0.5, 1.0});
    REQUIRE(mixed.size() == 2);
    CHECK(std::abs(mixed[0]) == 0.0);
    CHECK(std::abs(mixed[1] - Complex(0.5)) < 1e-12);
}

TEST_CASE("zero polynomial is refused") {
    CHECK_THROWS_AS(polynomial_roots(AnalyticPoly{0.0}), std::invalid_argument);
}

TEST_CASE("planted random roots are recovered") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int degree = rng.uniform_int(1, 16);
        std::vector<Complex> planted(static_cast<std::size_t>(degree));
        for (auto& root : planted) {
            // Mix of roots inside and outside the unit disc.
            root = rng.uniform(0.05, 1.8) *
                   Complex(std::cos(2.0 * M_PI * rng.uniform()),
                           std::sin(2.0 * M_PI * rng.uniform()));
        }
        const AnalyticPoly f = poly_from_roots(planted, rng.complex_gaussian());
        const auto found = polynomial_roots(f);
        CHECK(match_residual(found, planted) < 1e-7);
        for (const auto& root : found) {
            CHECK(std::abs(evaluate(f, root)) <= 1e-8 * f.max_coeff_magnitude());
        }
    }
}

TEST_CASE("determinism: identical calls give identical roots") {
    Rng rng(5);
    std::vector<Complex> coeffs(9);
    for (auto& c : coeffs) c = rng.complex_gaussian();
    const AnalyticPoly f(std::move(coeffs));
    const auto a = polynomial_roots(f);
    const auto b = polynomial_roots(f);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("degenerate start radius still converges") {
    RootSolveOptions opts;
    opts.start_radius = 0.05; // far from the actual roots
    std::vector<Complex> planted{Complex(2.0, 1.0), Complex(-3.0, 0.5),
                                 Complex(0.0, 4.0)};
    const AnalyticPoly f = poly_from_roots(planted, Complex(1.0));
    const auto found = polynomial_roots(f, opts);
    CHECK(match_residual(found, planted) < 1e-9);
}
