#pragma once

#include "riesz/circle.hpp"
#include "riesz/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace riesz {

/// Below this value of the main bound an instance counts as degenerate and
/// the demanded-constant ratio is reported as NaN instead of a division.
inline constexpr double kDegenerateBound = 1e-12;

/// One evaluation of the dilation inequality
///   ||f_r - f_rho||_1 <= 2*sqrt(||f_rho||_1^2 - ||f_r||_1^2)
/// and of its weaker adjusted form
///   ||f_r - f_rho||_1 <= 2*sqrt(2)*sqrt(||f_rho||_1)*sqrt(||f_rho||_1 - ||f_r||_1).
struct LemmaReport {
    double lhs = 0.0;
    double rhs_main = 0.0;
    double rhs_adjusted = 0.0;
    /// lhs / (rhs_main / 2): the constant this instance demands. NaN when the
    /// bound is degenerate (constants and the r == rho diagonal).
    double ratio = 0.0;
    double norm_r = 0.0;
    double norm_rho = 0.0;
    /// ||f_rho||_1 < ||f_r||_1 - tol; never fires for analytic inputs.
    bool monotonicity_violation = false;

    bool degenerate() const;
    double slack_main() const { return rhs_main - lhs; }
    double slack_adjusted() const { return rhs_adjusted - lhs; }
};

/// Evaluates both bounds by circle quadrature. Requires 0 <= r <= rho < 1.
LemmaReport check_main_lemma(const AnalyticPoly& f, double r, double rho,
                             int num_points);

/// Same computation; callers assert against rhs_adjusted instead.
LemmaReport check_adjusted_lemma(const AnalyticPoly& f, double r, double rho,
                                 int num_points);

/// Radial means r -> ||f_r||_1 on an increasing grid, with the discrete
/// convexity diagnostic of log ||f_r||_1 against log r (slope differences of
/// consecutive chords; radii at 0 are skipped for the log-log part).
struct RadialMeanProfile {
    std::vector<double> radii;
    std::vector<double> means;
    std::vector<double> convexity; ///< second differences, >= 0 when convex
    double min_increment = 0.0;    ///< most negative consecutive mean change
    double min_convexity = 0.0;    ///< most negative second difference
};

RadialMeanProfile radial_mean_profile(const AnalyticPoly& f,
                                      std::span<const double> radii,
                                      int num_points);

/// The harmonic extension of the unit point-mass kernel at w: positive,
/// harmonic, mean 1 on every circle, and not analytic unless w == 0.
///   u(z) = (1 - |w z|^2) / |1 - conj(w) z|^2.
double poisson_control(Complex w, Complex z);

/// Runs the lemma report on u instead of an analytic function. For w != 0
/// the means are pinned at 1, so rhs_main collapses to ~0 while lhs stays
/// positive: the inequality fails, certifying that analyticity is essential.
LemmaReport negative_control_poisson(Complex w, double r, double rho,
                                     int num_points);

/// Deterministic random instances for batch drivers: coefficients i.i.d.
/// complex standard Gaussian, degree uniform in {1..max_degree} (0 when
/// max_degree == 0), rho uniform in (0.05, 0.95), r = rho * uniform(0,1).
struct LemmaInstance {
    AnalyticPoly poly;
    int degree = 0;
    double r = 0.0;
    double rho = 0.0;
};

LemmaInstance random_lemma_instance(std::uint64_t seed, std::uint64_t index,
                                    int max_degree = 16);

} // namespace riesz
