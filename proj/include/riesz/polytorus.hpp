#pragma once

#include "riesz/circle.hpp"
#include "riesz/rng.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace riesz {

/// Compactly supported integer frequency vector kappa = (k_1, ..., k_m),
/// indexing the character chi^kappa = prod_j chi_j^{k_j} of the infinite
/// torus. Canonical form trims trailing zeros, so support() is both the
/// number of stored entries and the largest variable index that occurs.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(std::vector<int> entries);

    /// Largest 1-based variable index with a nonzero exponent; 0 when empty.
    int support() const { return static_cast<int>(entries_.size()); }
    /// Exponent of variable j (1-based); 0 beyond the stored entries.
    int exponent(int j) const;
    const std::vector<int>& entries() const { return entries_; }
    /// True iff all exponents are >= 0.
    bool is_analytic() const;
    /// Sum of the exponents of the variables with index > d (analytic only).
    int degree_beyond(int d) const;

    MultiIndex operator+(const MultiIndex& other) const;
    auto operator<=>(const MultiIndex&) const = default;

private:
    void canonicalize();
    std::vector<int> entries_;
};

/// Finite Fourier sum T(chi) = sum_kappa a_kappa chi^kappa with exact
/// coefficient arithmetic. Zero coefficients are never stored.
class TrigPoly {
public:
    using TermMap = std::map<MultiIndex, Complex>;

    TrigPoly() = default;
    static TrigPoly constant(Complex c);
    static TrigPoly monomial(MultiIndex kappa, Complex coeff = Complex(1.0));

    void set(MultiIndex kappa, Complex coeff);
    void add(const MultiIndex& kappa, Complex coeff);
    Complex coefficient(const MultiIndex& kappa) const;
    const TermMap& terms() const { return terms_; }

    /// Smallest d such that the polynomial only depends on chi_1..chi_d.
    int dimension() const;
    bool is_analytic() const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// chi must provide at least dimension() coordinates.
    Complex evaluate(std::span<const Complex> chi) const;

    TrigPoly operator+(const TrigPoly& other) const;
    TrigPoly operator-(const TrigPoly& other) const;
    TrigPoly operator*(const TrigPoly& other) const;
    TrigPoly operator*(Complex scalar) const;
    bool operator==(const TrigPoly&) const = default;

private:
    TermMap terms_;
};

/// Keeps exactly the terms supported on the first d variables (the
/// coefficient-truncation projection). Idempotent;
/// abschnitt(abschnitt(T, d2), d1) == abschnitt(T, min(d1, d2)).
TrigPoly abschnitt(const TrigPoly& t, int d);

/// The substitution form: P(chi_1, ..., chi_d, 0, 0, ...). Only analytic
/// polynomials admit it; coincides with abschnitt coefficient-for-coefficient.
TrigPoly abschnitt_substitution(const TrigPoly& p, int d);

struct IntegralEstimate {
    double value = 0.0;
    double std_error = 0.0; ///< 0 for tensor grids
};

/// Integrator against normalized Haar measure restricted to the first d
/// coordinates: either a full tensor product grid (exact for band-limited
/// integrands, d <= 3) or Monte Carlo with a counter-based generator and a
/// reported standard error.
class TorusSampler {
public:
    enum class Scheme { TensorGrid, MonteCarlo };

    static TorusSampler tensor(int dimension, int points_per_axis = 256);
    static TorusSampler monte_carlo(int dimension, std::int64_t samples,
                                    std::uint64_t seed);

    Scheme scheme() const { return scheme_; }
    int dimension() const { return dimension_; }
    int points_per_axis() const { return points_per_axis_; }
    std::int64_t samples() const { return samples_; }
    std::uint64_t seed() const { return seed_; }

    /// Mean of fn over T^dimension.
    IntegralEstimate mean(
        const std::function<double(std::span<const Complex>)>& fn) const;

    /// Mean of |T|^p; uses a power-table fast path on tensor grids.
    IntegralEstimate mean_abs_pow(const TrigPoly& t, double p) const;

private:
    Scheme scheme_ = Scheme::TensorGrid;
    int dimension_ = 1;
    int points_per_axis_ = 256;
    std::int64_t samples_ = 1 << 20;
    std::uint64_t seed_ = 1;
};

struct NormEstimate {
    double value = 0.0;
    double std_error = 0.0; ///< propagated through the 1/p power for MC
};

/// (integral of |T|^p dm)^(1/p) for p >= 1. The sampler dimension must cover
/// dimension(T). The zero polynomial has norm exactly 0.
NormEstimate norm_lp(const TrigPoly& t, double p, const TorusSampler& sampler);

/// (||A_1 T||_p, ..., ||A_D T||_p, ||T||_p) with D = dimension(T).
std::vector<NormEstimate> check_abschnitt_monotone(const TrigPoly& t, double p,
                                                   const TorusSampler& sampler);

/// ||T - A_d T||_p for d = 1..dimension(T); the last entry is exactly 0.
std::vector<NormEstimate> check_lp_density_convergence(
    const TrigPoly& t, double p, const TorusSampler& sampler);

/// F(chi, z) = P(chi_1, ..., chi_d1, chi_{d1+1} z, ..., chi_m z): for fixed
/// chi a polynomial in z whose coefficients group the terms of P by total
/// degree in the variables beyond d1. F(chi, 0) recovers the substitution
/// form of A_{d1} P and F(chi, 1) recovers P.
class SliceEmbedding {
public:
    SliceEmbedding(const TrigPoly& p, int d1);

    AnalyticPoly z_polynomial(std::span<const Complex> chi) const;
    Complex operator()(std::span<const Complex> chi, Complex z) const;

    int d1() const { return d1_; }
    int dimension() const { return dimension_; }
    int max_trailing_degree() const {
        return static_cast<int>(groups_.size()) - 1;
    }

private:
    int d1_ = 0;
    int dimension_ = 0;
    std::vector<TrigPoly> groups_; ///< groups_[t] collects trailing degree t
};

/// Both evaluation routes for the truncation-difference bound
///   ||A_d1 P - A_d2 P||_1
///     <= 2*sqrt(2)*sqrt(||A_d2 P||_1)*sqrt(||A_d2 P||_1 - ||A_d1 P||_1):
/// the direct route compares torus norms of the projections, the slice route
/// runs the one-variable bound at r = 0, rho = 1 on the embedded disc slice
/// and averages over the torus. Tolerances include 3 standard errors for
/// Monte Carlo samplers.
struct H1AbschnittReport {
    double norm_d1 = 0.0;
    double norm_d2 = 0.0;
    double lhs_direct = 0.0;
    double rhs_direct = 0.0;
    double tol_direct = 0.0;
    bool direct_holds = false;
    double lhs_slice = 0.0;
    double rhs_slice = 0.0;
    double tol_slice = 0.0;
    bool slice_holds = false;
    /// Slice-route estimates of the projection norms (cross-checks).
    double slice_norm_d1 = 0.0;
    double slice_norm_d2 = 0.0;
};

H1AbschnittReport check_h1_abschnitt_lemma(const TrigPoly& p, int d1, int d2,
                                           const TorusSampler& sampler,
                                           int circle_points = 128);

/// Chain verification and reconstruction: checks A_d f_{d+1} == f_d
/// coefficient-exactly, and if the chain holds returns f_D together with the
/// L1 increments and their truncation bounds.
struct ChainReconstruction {
    bool ok = false;
    int first_violation = -1; ///< smallest d with A_d f_{d+1} != f_d
    TrigPoly reconstructed;
    std::vector<double> increments; ///< ||f_{d+1} - f_d||_1
    std::vector<double> bounds;     ///< 2*sqrt(2)*sqrt(b)*sqrt(b - a) per step
};

ChainReconstruction chain_reconstruct(std::span<const TrigPoly> chain,
                                      const TorusSampler& sampler);

/// Random instances for batch drivers: frequencies uniform in
/// [-max_frequency, max_frequency] (or [0, max_degree] for the analytic
/// variant), coefficients standard complex Gaussian.
TrigPoly random_trig_poly(Rng& rng, int dimension, int max_frequency,
                          int terms);
TrigPoly random_analytic_trig_poly(Rng& rng, int dimension, int max_degree,
                                   int terms);

} // namespace riesz
