#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/nelder_mead.hpp"
#include "riesz/search.hpp"

#include <cmath>

using namespace riesz;

TEST_CASE("nelder_mead: smooth quadratics converge") {
    const auto bowl = [](std::span<const double> x) {
        return (x[0] - 2.0) * (x[0] - 2.0) + (x[1] + 1.0) * (x[1] + 1.0);
    };
    NelderMeadOptions options;
    options.max_evaluations = 4000;
    const std::vector<double> start{0.0, 0.0};
    const NelderMeadResult r = nelder_mead_minimize(bowl, start, options);
    CHECK(std::abs(r.x[0] - 2.0) < 1e-5);
    CHECK(std::abs(r.x[1] + 1.0) < 1e-5);
    CHECK(r.value < 1e-9);

    const auto ridge = [](std::span<const double> x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            acc += (x[i] - static_cast<double>(i)) * (x[i] - static_cast<double>(i)) *
                   (1.0 + static_cast<double>(i));
        }
        return acc;
    };
    const std::vector<double> start4{1.0, 1.0, 1.0, 1.0};
    const NelderMeadResult r4 = nelder_mead_minimize(ridge, start4, options);
    CHECK(r4.value < 1e-6);
}

TEST_CASE("objective: degenerate convention, paper anchor, monomial") {
    const std::vector<Complex> constant{Complex(5.0, 2.0)};
    CHECK(search_objective(constant, 0.1, 0.8, 256) == 0.0);

    const std::vector<Complex> eps{Complex(1.0), Complex(1e-4)};
    CHECK(std::abs(search_objective(eps, 0.0, 0.99, 4096) - std::sqrt(2.0)) < 1e-2);

    const std::vector<Complex> mono{Complex(0.0), Complex(1.0)};
    CHECK(search_objective(mono, 0.2, 0.5, 256) ==
          doctest::Approx(0.3 / std::sqrt(0.21)).epsilon(1e-12));
}

TEST_CASE("objective: invariant under coefficient rescaling") {
    Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Complex> coeffs(static_cast<std::size_t>(rng.uniform_int(1, 9)));
        for (auto& c : coeffs) c = rng.complex_gaussian();
        const double rho = rng.uniform(0.1, 0.95);
        const double r = rho * rng.uniform();
        const double base = search_objective(coeffs, r, rho, 512);
        Complex scale = rng.complex_gaussian();
        if (std::abs(scale) < 1e-3) scale = Complex(1.0, 1.0);
        auto scaled = coeffs;
        for (auto& c : scaled) c *= scale;
        CHECK(std::abs(search_objective(scaled, r, rho, 512) - base) <= 1e-10);
    }
}

TEST_CASE("objective: p = 2 never exceeds 1 (orthogonality)") {
    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> coeffs(static_cast<std::size_t>(rng.uniform_int(1, 9)));
        for (auto& c : coeffs) c = rng.complex_gaussian();
        const double rho = rng.uniform(0.1, 0.95);
        const double r = rho * rng.uniform();
        CHECK(search_objective(coeffs, r, rho, 256, 2.0) <= 1.0 + 1e-10);
    }
}

namespace {

SearchConfig quick_config(SearchMode mode) {
    SearchConfig config;
    config.mode = mode;
    config.degree = 3;
    config.restarts = 6;
    config.iterations = 500;
    config.seed = 42;
    config.search_points = 512;
    config.certify_points = 2048;
    return config;
}

} // namespace

TEST_CASE("maximize: r-zero stays in the sqrt(2) bracket") {
    const SearchResult result = maximize(quick_config(SearchMode::RZero), 2);
    CHECK(result.best_ratio >= 1.410);
    CHECK(result.best_ratio <= std::sqrt(2.0) + 1e-3);
    CHECK(result.max_evaluated_ratio <= std::sqrt(2.0) + 1e-3);
    CHECK(result.r == 0.0);
    CHECK(std::abs(result.certified_ratio - result.best_ratio) < 1e-4);
    REQUIRE(result.history.size() == 6);
}

TEST_CASE("maximize: r-free reaches sqrt(2) and respects the ceiling") {
    const SearchResult result = maximize(quick_config(SearchMode::RFree), 2);
    CHECK(result.best_ratio >= std::sqrt(2.0) - 1e-3);
    CHECK(result.best_ratio <= 2.0 + 1e-6);
    CHECK(result.max_evaluated_ratio <= 2.0 + 1e-6);
    CHECK(result.rho < 1.0);
    CHECK(result.r <= result.rho);
    // Reported argmax is in normal form.
    double norm_sq = 0.0;
    for (const auto& c : result.coefficients) norm_sq += std::norm(c);
    CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximize: p = 2 variant is pinned at 1") {
    SearchConfig config = quick_config(SearchMode::PVariant);
    config.p = 2.0;
    const SearchResult result = maximize(config, 2);
    CHECK(result.best_ratio <= 1.0 + 1e-6);
    CHECK(result.max_evaluated_ratio <= 1.0 + 1e-6);
}

TEST_CASE("maximize: quasinorm exponents below 1 are accepted and finite") {
    SearchConfig config = quick_config(SearchMode::PVariant);
    config.p = 0.5;
    config.restarts = 2;
    config.iterations = 200;
    const SearchResult result = maximize(config, 2);
    CHECK(std::isfinite(result.best_ratio));
    CHECK(result.best_ratio >= 0.0);
    CHECK(std::isfinite(result.certified_ratio));
}

TEST_CASE("maximize: deterministic and thread-count independent") {
    const SearchResult a = maximize(quick_config(SearchMode::RZero), 1);
    const SearchResult b = maximize(quick_config(SearchMode::RZero), 4);
    CHECK(a.best_ratio == b.best_ratio);
    CHECK(a.r == b.r);
    CHECK(a.rho == b.rho);
    REQUIRE(a.coefficients.size() == b.coefficients.size());
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
        CHECK(a.coefficients[i] == b.coefficients[i]);
    }
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].best_ratio == b.history[i].best_ratio);
    }
}

TEST_CASE("maximize: certified maximum is stable under quadrature doubling") {
    SearchConfig config = quick_config(SearchMode::RFree);
    const SearchResult result = maximize(config, 2);
    std::vector<Complex> coeffs = result.coefficients;
    const double at_certify =
        search_objective(coeffs, result.r, result.rho, config.certify_points);
    const double at_double =
        search_objective(coeffs, result.r, result.rho, 2 * config.certify_points);
    CHECK(std::abs(at_certify - at_double) < 1e-4);
}

TEST_CASE("config validation") {
    SearchConfig config;
    config.degree = 40;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = SearchConfig{};
    config.restarts = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = SearchConfig{};
    config.mode = SearchMode::PVariant;
    config.p = -1.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
