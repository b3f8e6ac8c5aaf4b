#pragma once

#include "riesz/circle.hpp"
#include "riesz/polytorus.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace riesz {

/// One point mass: weight * delta at e^{i angle}.
struct Atom {
    double angle = 0.0; ///< in [0, 2*pi)
    Complex weight;
};

/// Finite complex measure on the circle modeled as finitely many atoms plus
/// an absolutely continuous part with trigonometric-polynomial density
/// against d(theta)/2pi. Rich enough to exhibit both absolutely continuous
/// measures and the singular ones the F. & M. Riesz theorem excludes, while
/// keeping every Fourier coefficient exact.
class CircleMeasure {
public:
    CircleMeasure() = default;
    CircleMeasure(std::vector<Atom> atoms, TrigPoly density);

    static CircleMeasure point_mass(double angle, Complex weight = Complex(1.0));
    static CircleMeasure from_density(TrigPoly density);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const TrigPoly& density() const { return density_; }
    bool is_zero() const { return atoms_.empty() && density_.is_zero(); }

    /// sum |w_j| + ||density||_1 (the parts are mutually singular).
    double total_variation(int num_points = 4096) const;

private:
    std::vector<Atom> atoms_;
    TrigPoly density_; ///< one variable: frequencies live on the first axis
};

/// mu_hat(k) = sum_j w_j e^{-ik theta_j} + (density coefficient at k); exact.
Complex fourier_coefficient(const CircleMeasure& mu, int k);

/// max_{1<=k<=frequencies} |mu_hat(-k)|.
double max_negative_coefficient(const CircleMeasure& mu, int frequencies);

/// True iff every checked negative-frequency coefficient is below tol.
bool is_analytic(const CircleMeasure& mu, int frequencies = 64,
                 double tol = 1e-10);

/// The positive unit-mass kernel (1 - |z|^2) / |chi - z|^2 for |z| < 1,
/// |chi| = 1.
double poisson_kernel(Complex z, Complex chi);

/// Harmonic extension of mu at z (|z| < 1): atoms contribute kernel values,
/// the density pairs its k-th coefficient with z^k (conj(z)^{|k|} for k < 0).
Complex poisson_extension(const CircleMeasure& mu, Complex z);

/// The circle-level demonstration: sample f = P[mu] on a radius grid, record
/// the L1 Cauchy increments with their dilation bounds, recover the boundary
/// coefficients from the outermost circle by dividing out the radial decay,
/// and compare against mu_hat. For non-analytic mu the same pipeline runs in
/// contrast mode and exhibits increments bounded away from zero.
struct FmRieszReport {
    bool analytic_mode = false;
    std::vector<double> radii;
    std::vector<double> increments;  ///< ||f_{r_i} - f_{r_{i+1}}||_1
    std::vector<double> bounds;      ///< 2 sqrt(||f_rho||^2 - ||f_r||^2)
    std::vector<double> fubini_gaps; ///< total_variation - ||f_r||_1, per radius
    double min_increment = 0.0;
    double max_increment = 0.0;
    int coefficient_depth = 0;
    double max_coefficient_residual = 0.0; ///< max_k |recovered(k) - mu_hat(k)|
};

FmRieszReport fm_riesz_demo(const CircleMeasure& mu, std::span<const double> radii,
                            int num_points, int coefficient_depth = 64);

/// Point of the infinite polydisc, either materialized coordinates or a
/// named tail rule. The rule carries its own summability classification, so
/// reports never infer membership from truncated numerics.
class PolydiscPoint {
public:
    enum class Classification { L1, L2NotL1, OutsideL2 };

    static PolydiscPoint from_coords(std::vector<Complex> coords);
    /// z_j = c * q^j for j >= 1; requires |c*q| < 1 and |q| < 1.
    static PolydiscPoint geometric(double c, double q);
    /// z_j = c * (j + shift)^{-a}; requires a > 0 and |z_1| < 1.
    static PolydiscPoint power(double c, double a, int shift = 0);

    Complex coord(int j) const; ///< 1-based
    Classification classification() const { return classification_; }
    std::string rule() const { return rule_; }

private:
    PolydiscPoint() = default;
    enum class Kind { Coords, Geometric, Power } kind_ = Kind::Coords;
    std::vector<Complex> coords_;
    double c_ = 0.0, q_ = 0.0, a_ = 0.0;
    int shift_ = 0;
    Classification classification_ = Classification::L1;
    std::string rule_;
};

std::string to_string(PolydiscPoint::Classification c);

/// The Poisson product chain f_d(chi) = prod_{j<=d} kernel(z_j, chi_j):
/// nonnegative, unit mass, and compatible under averaging out the last
/// coordinate (the chain property).
class PoissonChain {
public:
    PoissonChain(PolydiscPoint point, int depth);

    int depth() const { return depth_; }
    const PolydiscPoint& point() const { return point_; }

    /// f_d(chi); chi must provide at least d coordinates, d <= depth.
    double evaluate(int d, std::span<const Complex> chi) const;

    /// max over `probes` random chi of |avg_{theta} f_{d+1}(chi, e^{i theta})
    /// - f_d(chi)|, the numerical chain-property residual.
    double chain_residual(int d, int quad_points, int probes,
                          std::uint64_t seed) const;

    /// 1-D quadrature of ||f_d||_1 factor by factor (should be 1).
    double l1_mass(int d, int quad_points) const;

private:
    PolydiscPoint point_;
    int depth_ = 0;
};

inline PoissonChain poisson_chain(PolydiscPoint point, int depth) {
    return PoissonChain(std::move(point), depth);
}

/// ||f_{d+1} - f_d||_1 via the exact factorization through
/// ||kernel(z_{d+1}, .) - 1||_{L1(T)}; one-dimensional quadrature.
double chain_increment_l1(const PolydiscPoint& point, int d, int num_points);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Direct Monte Carlo estimate of the same increment on T^{d+1}.
McEstimate chain_increment_mc(const PolydiscPoint& point, int d,
                              std::int64_t samples, std::uint64_t seed);

/// Summability diagnostics: partial l1/l2 sums, per-depth chain increments,
/// and the running Poisson product at chi = (1, 1, ...), which stays bounded
/// exactly for l1 points. The classification comes from the tail rule.
struct ColeGamelinReport {
    std::string rule;
    PolydiscPoint::Classification classification;
    std::vector<double> l1_partial;
    std::vector<double> l2_partial;
    std::vector<double> increments;
    std::vector<double> partial_products;
};

ColeGamelinReport cole_gamelin_diagnostics(const PolydiscPoint& point, int depth,
                                           int num_points = 2048);

/// Product-measure demonstration of the infinite-torus theorem's mechanics:
/// with analytic factors mu_1..mu_d, the slice z -> prod_j P[mu_j](chi_j z)
/// is analytic for each chi, so the adjusted dilation bound applies slice by
/// slice and survives averaging over chi. Also checks the Fubini mass bound
/// against the product of total variations.
struct InfiniteTorusDemoReport {
    int dimension = 0;
    double r = 0.0;
    double rho = 0.0;
    double lhs = 0.0;        ///< mean_chi ||F(chi, r .) - F(chi, rho .)||_1
    double rhs = 0.0;        ///< adjusted bound from the averaged norms
    double tolerance = 0.0;  ///< includes 3 standard errors
    bool holds = false;
    double mass_rho = 0.0;   ///< mean_chi ||F(chi, rho .)||_1
    double mass_bound = 0.0; ///< product of total variations
    bool fubini_holds = false;
};

InfiniteTorusDemoReport infinite_torus_demo(std::span<const CircleMeasure> factors,
                                            double r, double rho,
                                            int circle_points,
                                            std::int64_t chi_samples,
                                            std::uint64_t seed);

} // namespace riesz
