#pragma once

#include "riesz/circle.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace riesz {

/// Raised when a zero of f sits within delta of the reference circle
/// |z| = rho. The construction regains its footing after a small outward
/// nudge of rho, which the caller performs before retrying.
class ZeroOnCircleError : public std::runtime_error {
public:
    ZeroOnCircleError(double rho, double offending_modulus);
    double rho() const { return rho_; }
    double offending_modulus() const { return offending_modulus_; }
    double suggested_rho() const { return rho_ + 1e-4; }

private:
    double rho_;
    double offending_modulus_;
};

/// Raised when the sampled phase winds around the origin, i.e. the function
/// is not the square of anything single-valued on the circle. For the
/// factorization this means a zero inside the disc was missed.
class NotFactorizableError : public std::runtime_error {
public:
    explicit NotFactorizableError(int winding);
    int winding() const { return winding_; }

private:
    int winding_;
};

/// Finite Blaschke product with zeros alpha_n (|alpha_n| < rho) and
/// reference radius rho:
///   B(z) = prod_n rho*(alpha_n - z) / (rho^2 - conj(alpha_n)*z).
/// |B| = 1 on |z| = rho for any admissible zeros; the empty product is 1.
struct BlaschkeProduct {
    std::vector<Complex> zeros;
    double rho = 0.5;

    Complex eval(Complex z) const;
};

inline Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
    return b.eval(z);
}

/// Distance between |z| and the circle |w| = rho tighter than which
/// find_zeros refuses and asks for a nudged rho.
inline constexpr double kZeroOnCircleDelta = 1e-6;

/// Roots of f with modulus < rho, multiplicities repeated, sorted by
/// (modulus, real, imag). Throws ZeroOnCircleError when a root is within
/// kZeroOnCircleDelta of the circle, std::invalid_argument for f == 0.
std::vector<Complex> find_zeros(const AnalyticPoly& f, double rho);

/// Pointwise square root with phase continuity along the sampled circle,
/// anchored at the principal root of values[0]. Requires every sample
/// nonzero and total winding zero (else NotFactorizableError).
std::vector<Complex> sqrt_branch(std::span<const Complex> values);

/// The factorization f = g*h with g = B*sqrt(F), h = sqrt(F), F = f/B,
/// where B collects the zeros of f inside the rho-disc. F is assembled in
/// product form from the full root set, so it stays non-vanishing on the
/// closed rho-disc by construction and the square-root branch can be
/// continued from the rho-circle anchor to any smaller radius.
class Factorization {
public:
    Factorization(const AnalyticPoly& f, double rho, int num_points);

    struct Samples {
        DilatedSamples g;
        DilatedSamples h;
        int winding = 0; ///< phase winding of F around this circle (must be 0)
    };

    /// Sample g and h on the circle of the given radius (0 <= radius <= rho).
    Samples at(double radius) const;

    const BlaschkeProduct& blaschke() const { return blaschke_; }
    double rho() const { return rho_; }
    int num_points() const { return num_points_; }
    const AnalyticPoly& poly() const { return f_; }

    /// F(z) in product form (never vanishes for |z| <= rho).
    Complex eval_f_over_b(Complex z) const;

private:
    double continued_phase(Complex from, double phase_from, Complex to,
                           int depth = 0) const;

    AnalyticPoly f_;
    double rho_;
    int num_points_;
    BlaschkeProduct blaschke_;
    std::vector<Complex> outside_roots_;
    Complex leading_;
    double anchor_phase_ = 0.0; ///< continuous arg F at z = rho
};

struct FactorizationResult {
    Factorization::Samples at_r;
    Factorization::Samples at_rho;
    BlaschkeProduct blaschke;
};

/// Convenience wrapper producing g, h on both circles at once.
FactorizationResult factorize(const AnalyticPoly& f, double r, double rho,
                              int num_points);

struct TraceStep {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;     ///< rhs - lhs
    double tolerance = 0.0; ///< step passes iff slack >= -tolerance
    bool holds() const { return slack >= -tolerance; }
};

/// Every inequality in the factorization proof chain, evaluated on one
/// instance: triangle split, Cauchy-Schwarz, the orthogonality estimates,
/// their combination, and the endpoint identities that produce the final
/// bound 2*sqrt(||f_rho||_1^2 - ||f_r||_1^2).
struct FactorizationTrace {
    double r = 0.0;
    double rho = 0.0;
    int num_points = 0;
    double g_r_l2 = 0.0, g_rho_l2 = 0.0;
    double h_r_l2 = 0.0, h_rho_l2 = 0.0;
    double f_r_l1 = 0.0, f_rho_l1 = 0.0;
    int winding_check = 0;
    std::vector<TraceStep> steps;

    bool all_hold() const;
    /// Index of the most violated step (smallest slack+tolerance margin).
    std::size_t worst_step() const;
    /// Key/value text serialization, one step per line.
    std::string to_text() const;
};

/// Runs the factorization on (f, r, rho) and records the full chain.
/// Tolerance per step: tol_abs + tol_rel * max(lhs, rhs).
FactorizationTrace trace_inequality_chain(const AnalyticPoly& f, double r,
                                          double rho, int num_points,
                                          double tol_abs = 1e-8,
                                          double tol_rel = 1e-8);

} // namespace riesz
