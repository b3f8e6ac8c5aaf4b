#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/polytorus.hpp"

#include <cmath>

using namespace riesz;

namespace {

constexpr double kFourOverPi = 1.2732395447351628;
constexpr double kFourOverPiSquared = 1.6211389382774043;
// Frozen from the pre-build quadratures for the planted chain
// prod_{j<=3} (1 + chi_j / 2).
constexpr double kPlantedIncrement12 = 0.53177220498668248;
constexpr double kPlantedIncrement23 = 0.56556335599279649;
// 2*sqrt(2)*sqrt(4/pi)*sqrt(4/pi - 1).
constexpr double kLemma8ExampleRhs = 1.6682910862130545;

TrigPoly planted_product(int vars) {
    TrigPoly p = TrigPoly::constant(1.0);
    for (int j = 1; j <= vars; ++j) {
        std::vector<int> idx(static_cast<std::size_t>(j), 0);
        idx.back() = 1;
        TrigPoly factor = TrigPoly::constant(1.0);
        factor.add(MultiIndex(idx), Complex(0.5));
        p = p * factor;
    }
    return p;
}

} // namespace

TEST_CASE("MultiIndex: canonical form, support, analyticity") {
    CHECK(MultiIndex{1, 0, 0}.support() == 1);
    CHECK(MultiIndex{}.support() == 0);
    CHECK(MultiIndex{0, 0, 2}.support() == 3);
    CHECK(MultiIndex{1, 0} == MultiIndex{1});
    CHECK(MultiIndex{1, -2}.is_analytic() == false);
    CHECK(MultiIndex{1, 2}.is_analytic() == true);
    CHECK(MultiIndex{}.is_analytic() == true);
    CHECK((MultiIndex{1, 2} + MultiIndex{0, -2, 3}) == MultiIndex{1, 0, 3});
    CHECK(MultiIndex{1, 2, 3}.degree_beyond(1) == 5);
    CHECK(MultiIndex{1, 2, 3}.exponent(2) == 2);
    CHECK(MultiIndex{1}.exponent(5) == 0);
}

TEST_CASE("TrigPoly: coefficient arithmetic is exact and sparse") {
    TrigPoly t;
    t.set(MultiIndex{1, 1}, Complex(2.0));
    t.add(MultiIndex{1, 1}, Complex(-2.0));
    CHECK(t.is_zero()); // exact cancellation leaves no term behind

    TrigPoly a = TrigPoly::monomial(MultiIndex{1}, Complex(1.0));
    TrigPoly b = TrigPoly::monomial(MultiIndex{0, 1}, Complex(1.0));
    const TrigPoly prod = a * b;
    CHECK(prod.coefficient(MultiIndex{1, 1}) == Complex(1.0));
    CHECK(prod.dimension() == 2);
    CHECK((a + b).term_count() == 2);
    CHECK((a - a).is_zero());

    const Complex chi[2] = {Complex(0.0, 1.0), Complex(-1.0, 0.0)};
    CHECK(std::abs(prod.evaluate(chi) - Complex(0.0, -1.0)) < 1e-15);

    // Negative exponents evaluate through the reciprocal.
    TrigPoly laurent = TrigPoly::monomial(MultiIndex{-1}, Complex(1.0));
    const Complex on_circle[1] = {Complex(0.0, 1.0)};
    CHECK(std::abs(laurent.evaluate(on_circle) - Complex(0.0, -1.0)) < 1e-15);
}

TEST_CASE("abschnitt: support filter, idempotence, composition") {
    TrigPoly t = TrigPoly::constant(3.0);
    t.add(MultiIndex{1, 1}, Complex(2.0));
    t.add(MultiIndex{0, 0, 1}, Complex(5.0));

    const TrigPoly a2 = abschnitt(t, 2);
    CHECK(a2.term_count() == 2);
    CHECK(a2.coefficient(MultiIndex{}) == Complex(3.0));
    CHECK(a2.coefficient(MultiIndex{1, 1}) == Complex(2.0));
    CHECK(abschnitt(t, 3) == t);
    CHECK(abschnitt(t, 7) == t);

    const TrigPoly cross = TrigPoly::monomial(MultiIndex{-1, 0, 1});
    CHECK(abschnitt(cross, 2).is_zero());

    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const TrigPoly random = random_trig_poly(rng, 4, 3, 8);
        const int d1 = rng.uniform_int(1, 4);
        const int d2 = rng.uniform_int(1, 4);
        CHECK(abschnitt(abschnitt(random, d1), d1) == abschnitt(random, d1));
        CHECK(abschnitt(abschnitt(random, d2), d1) ==
              abschnitt(random, std::min(d1, d2)));
    }
}

TEST_CASE("abschnitt_substitution coincides with abschnitt on analytic input") {
    TrigPoly p = TrigPoly::constant(3.0);
    p.add(MultiIndex{1, 1}, Complex(2.0));
    p.add(MultiIndex{0, 0, 1}, Complex(5.0));
    CHECK(abschnitt_substitution(p, 2) == abschnitt(p, 2));
    CHECK(abschnitt_substitution(TrigPoly::monomial(MultiIndex{1, 1, 1}), 1).is_zero());

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const TrigPoly random = random_analytic_trig_poly(rng, 4, 3, 10);
        for (int d = 0; d <= 5; ++d) {
            CHECK(abschnitt_substitution(random, d) == abschnitt(random, d));
        }
    }

    CHECK_THROWS_AS(abschnitt_substitution(TrigPoly::monomial(MultiIndex{-1}), 1),
                    std::invalid_argument);
}

TEST_CASE("norm_lp: constants, Parseval, and the 2-D product value") {
    const TorusSampler grid1 = TorusSampler::tensor(1, 64);
    CHECK(norm_lp(TrigPoly::constant(Complex(3.0, 4.0)), 1.0, grid1).value ==
          doctest::Approx(5.0).epsilon(1e-14));
    CHECK(norm_lp(TrigPoly::constant(Complex(3.0, 4.0)), 7.0, grid1).value ==
          doctest::Approx(5.0).epsilon(1e-14));

    TrigPoly two = TrigPoly::monomial(MultiIndex{1});
    two.add(MultiIndex{0, 1}, Complex(1.0));
    const TorusSampler grid2 = TorusSampler::tensor(2, 64);
    CHECK(norm_lp(two, 2.0, grid2).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    TrigPoly product = TrigPoly::constant(1.0);
    product.add(MultiIndex{1}, Complex(1.0));
    product.add(MultiIndex{0, 1}, Complex(1.0));
    product.add(MultiIndex{1, 1}, Complex(1.0)); // (1+chi_1)(1+chi_2)
    // |1 +- chi| integrands have kinks, so the tensor rule converges ~M^-2.
    CHECK(norm_lp(product, 1.0, TorusSampler::tensor(2, 256)).value ==
          doctest::Approx(kFourOverPiSquared).epsilon(1e-4));

    CHECK(norm_lp(TrigPoly{}, 1.0, grid1).value == 0.0);
    CHECK_THROWS_AS(norm_lp(two, 0.5, grid2), std::invalid_argument);
    CHECK_THROWS_AS(norm_lp(two, 1.0, grid1), std::invalid_argument); // dim too small
}

TEST_CASE("norm_lp: Monte Carlo agrees within error bars and reports them") {
    TrigPoly two = TrigPoly::monomial(MultiIndex{1});
    two.add(MultiIndex{0, 1}, Complex(1.0));
    const TorusSampler mc = TorusSampler::monte_carlo(2, 1 << 15, 77);
    const NormEstimate est = norm_lp(two, 2.0, mc);
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.value - std::sqrt(2.0)) <= 4.0 * est.std_error + 1e-3);

    // Deterministic in the seed.
    const NormEstimate again = norm_lp(two, 2.0, mc);
    CHECK(est.value == again.value);
    CHECK(est.std_error == again.std_error);
}

TEST_CASE("tensor sampler dimension cap and validation") {
    CHECK_THROWS_AS(TorusSampler::tensor(4, 16), std::invalid_argument);
    CHECK_THROWS_AS(TorusSampler::tensor(0, 16), std::invalid_argument);
    CHECK_THROWS_AS(TorusSampler::monte_carlo(2, 1, 1), std::invalid_argument);
}

TEST_CASE("check_abschnitt_monotone: Parseval staircase and random batches") {
    TrigPoly three = TrigPoly::monomial(MultiIndex{1});
    three.add(MultiIndex{0, 1}, Complex(1.0));
    three.add(MultiIndex{0, 0, 1}, Complex(1.0));
    const TorusSampler grid = TorusSampler::tensor(3, 16);
    const auto staircase = check_abschnitt_monotone(three, 2.0, grid);
    REQUIRE(staircase.size() == 4);
    CHECK(staircase[0].value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(staircase[1].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(staircase[2].value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(staircase[3].value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));

    const TrigPoly single = TrigPoly::monomial(MultiIndex{2}, Complex(0.5));
    const auto flat = check_abschnitt_monotone(single, 1.0, TorusSampler::tensor(1, 32));
    for (std::size_t i = 1; i < flat.size(); ++i) {
        CHECK(flat[i].value == doctest::Approx(flat[0].value).epsilon(1e-14));
    }

    Rng rng(9);
    const TorusSampler grid32 = TorusSampler::tensor(3, 32);
    for (int trial = 0; trial < 50; ++trial) {
        const TrigPoly t = random_trig_poly(rng, 3, 3, 8);
        for (const double p : {1.0, 2.0}) {
            const auto seq = check_abschnitt_monotone(t, p, grid32);
            for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                CHECK(seq[i].value <= seq[i + 1].value + 1e-8);
            }
        }
    }
}

TEST_CASE("check_lp_density_convergence terminates at exactly zero") {
    TrigPoly t = TrigPoly::monomial(MultiIndex{1});
    t.add(MultiIndex{0, 0, 1}, Complex(1.0)); // chi_1 + chi_3
    const TorusSampler grid = TorusSampler::tensor(3, 16);
    const auto seq = check_lp_density_convergence(t, 2.0, grid);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(seq[1].value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(seq[2].value == 0.0);

    const auto one_var =
        check_lp_density_convergence(TrigPoly::monomial(MultiIndex{1}), 1.0,
                                     TorusSampler::tensor(1, 16));
    REQUIRE(one_var.size() == 1);
    CHECK(one_var[0].value == 0.0);

    Rng rng(15);
    const TrigPoly random = random_trig_poly(rng, 3, 3, 9);
    const auto rand_seq = check_lp_density_convergence(random, 1.0, grid);
    CHECK(rand_seq.back().value <= 1e-12);
}

TEST_CASE("mean-value property: averaging trailing variables reproduces abschnitt") {
    Rng rng(25);
    const TrigPoly t = random_trig_poly(rng, 3, 3, 8);
    const TrigPoly a1 = abschnitt(t, 1);
    // Average t over (chi_2, chi_3) on a tensor grid for fixed chi_1 probes.
    const int m = 16;
    for (int probe = 0; probe < 8; ++probe) {
        const double theta = 2.0 * M_PI * rng.uniform();
        const Complex chi1(std::cos(theta), std::sin(theta));
        Complex average(0.0);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                const Complex chi[3] = {
                    chi1,
                    Complex(std::cos(2.0 * M_PI * a / m), std::sin(2.0 * M_PI * a / m)),
                    Complex(std::cos(2.0 * M_PI * b / m), std::sin(2.0 * M_PI * b / m))};
                average += t.evaluate(chi);
            }
        }
        average /= static_cast<double>(m) * static_cast<double>(m);
        const Complex chi_only[1] = {chi1};
        CHECK(std::abs(average - a1.evaluate(chi_only)) <= 1e-10);
    }
}

TEST_CASE("slice embedding: degenerate, monomial, and evaluation consistency") {
    // Independent of the trailing variables: constant in z.
    TrigPoly flat = TrigPoly::monomial(MultiIndex{2}, Complex(1.5));
    const SliceEmbedding s_flat(flat, 1);
    CHECK(s_flat.max_trailing_degree() == 0);

    const SliceEmbedding s_mono(TrigPoly::monomial(MultiIndex{1, 1}), 1);
    const Complex chi[2] = {Complex(0.0, 1.0), Complex(1.0, 0.0)};
    const AnalyticPoly zp = s_mono.z_polynomial(chi);
    CHECK(zp.degree() == 1);
    CHECK(std::abs(zp.coeff(0)) == 0.0);
    CHECK(std::abs(zp.coeff(1) - Complex(0.0, 1.0)) < 1e-15);

    Rng rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        const TrigPoly p = random_analytic_trig_poly(rng, 3, 3, 8);
        const int d1 = rng.uniform_int(0, 3);
        const SliceEmbedding slice(p, d1);
        const TrigPoly a_sub = abschnitt_substitution(p, d1);
        std::vector<Complex> point(3);
        for (auto& c : point) {
            const double theta = 2.0 * M_PI * rng.uniform();
            c = Complex(std::cos(theta), std::sin(theta));
        }
        const Complex at_one = slice(point, Complex(1.0));
        const Complex at_zero = slice(point, Complex(0.0));
        CHECK(std::abs(at_one - p.evaluate(point)) <=
              1e-12 * (1.0 + std::abs(p.evaluate(point))));
        CHECK(std::abs(at_zero - a_sub.evaluate(point)) <=
              1e-12 * (1.0 + std::abs(a_sub.evaluate(point))));
    }

    CHECK_THROWS_AS(SliceEmbedding(TrigPoly::monomial(MultiIndex{-1}), 1),
                    std::invalid_argument);
}

TEST_CASE("truncation bound: 1 + chi_2 example on both routes") {
    TrigPoly p = TrigPoly::constant(1.0);
    p.add(MultiIndex{0, 1}, Complex(1.0));
    const H1AbschnittReport rep =
        check_h1_abschnitt_lemma(p, 1, 2, TorusSampler::tensor(2, 256));
    CHECK(rep.lhs_direct == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.norm_d2 == doctest::Approx(kFourOverPi).epsilon(1e-4));
    CHECK(rep.rhs_direct == doctest::Approx(kLemma8ExampleRhs).epsilon(5e-4));
    CHECK(rep.direct_holds);
    CHECK(rep.slice_holds);
    CHECK(rep.lhs_slice == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.slice_norm_d2 == doctest::Approx(kFourOverPi).epsilon(1e-4));
    CHECK(rep.slice_norm_d1 == doctest::Approx(rep.norm_d1).epsilon(1e-5));
}

TEST_CASE("truncation bound: degenerate case and random batches on both routes") {
    const TrigPoly within = planted_product(1);
    const H1AbschnittReport degenerate =
        check_h1_abschnitt_lemma(within, 1, 2, TorusSampler::tensor(2, 32));
    CHECK(degenerate.lhs_direct == 0.0);
    CHECK(degenerate.direct_holds);
    CHECK(degenerate.slice_holds);

    Rng rng(45);
    for (int trial = 0; trial < 40; ++trial) {
        const TrigPoly p = random_analytic_trig_poly(rng, 3, 2, 6);
        const H1AbschnittReport rep =
            check_h1_abschnitt_lemma(p, 1, 3, TorusSampler::tensor(3, 24), 64);
        CHECK(rep.direct_holds);
        CHECK(rep.slice_holds);
        CHECK(rep.direct_holds == rep.slice_holds);
    }

    // Monte Carlo sampler exercises the error-bar path.
    Rng rng2(46);
    for (int trial = 0; trial < 5; ++trial) {
        const TrigPoly p = random_analytic_trig_poly(rng2, 4, 2, 6);
        const H1AbschnittReport rep = check_h1_abschnitt_lemma(
            p, 2, 4, TorusSampler::monte_carlo(4, 1 << 13, 1000 + trial), 64);
        CHECK(rep.direct_holds);
        CHECK(rep.slice_holds);
    }

    CHECK_THROWS_AS(check_h1_abschnitt_lemma(planted_product(3), 2, 1,
                                             TorusSampler::tensor(3, 16)),
                    std::invalid_argument);
}

TEST_CASE("chain_reconstruct: planted chain, violations, and bounds") {
    const TrigPoly p = planted_product(3);
    std::vector<TrigPoly> chain;
    for (int d = 1; d <= 3; ++d) chain.push_back(abschnitt(p, d));
    const TorusSampler grid = TorusSampler::tensor(3, 64);
    const ChainReconstruction rec = chain_reconstruct(chain, grid);
    REQUIRE(rec.ok);
    CHECK(rec.reconstructed == p);
    REQUIRE(rec.increments.size() == 2);
    CHECK(rec.increments[0] == doctest::Approx(kPlantedIncrement12).epsilon(1e-10));
    CHECK(rec.increments[1] == doctest::Approx(kPlantedIncrement23).epsilon(1e-10));
    for (std::size_t i = 0; i < rec.increments.size(); ++i) {
        CHECK(rec.increments[i] <= rec.bounds[i] + 1e-8);
    }

    std::vector<TrigPoly> broken{TrigPoly::monomial(MultiIndex{1}),
                                 TrigPoly::monomial(MultiIndex{0, 1})};
    const ChainReconstruction bad = chain_reconstruct(broken, grid);
    CHECK_FALSE(bad.ok);
    CHECK(bad.first_violation == 1);

    std::vector<TrigPoly> misdimensioned{TrigPoly::monomial(MultiIndex{0, 1})};
    CHECK_THROWS_AS(chain_reconstruct(misdimensioned, grid), std::invalid_argument);
}
