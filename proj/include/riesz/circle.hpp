#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace riesz {

using Complex = std::complex<double>;

/// Finite complex power series a_0 + a_1 z + ... + a_D z^D, the implementable
/// stand-in for an analytic function on the unit disc. Trailing zero
/// coefficients are trimmed at construction; evaluation is exact polynomial
/// arithmetic (single Horner pass).
class AnalyticPoly {
public:
    AnalyticPoly() : coeffs_{Complex(0.0)} {}
    explicit AnalyticPoly(std::vector<Complex> coeffs);
    AnalyticPoly(std::initializer_list<Complex> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const Complex> coeffs() const { return coeffs_; }
    Complex coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : Complex(0.0);
    }
    bool is_zero() const;
    double max_coeff_magnitude() const;

    bool operator==(const AnalyticPoly&) const = default;

private:
    std::vector<Complex> coeffs_;
};

/// Horner evaluation of f at z.
Complex evaluate(const AnalyticPoly& f, Complex z);

/// Uniform sample grid on the circle of the given radius: points are
/// radius * exp(2*pi*i*j/M) for j = 0..M-1, with implicit trapezoidal weight
/// 1/M. Grids at different radii share the same angular nodes.
struct CircleGrid {
    double radius = 0.0;
    std::vector<Complex> points;

    int size() const { return static_cast<int>(points.size()); }
    bool same_angles(const CircleGrid& other) const {
        return points.size() == other.points.size();
    }

    /// num_points must be even and >= 2; radius in [0, 1].
    static CircleGrid make(double radius, int num_points);
};

/// Samples of a dilation f_r(e^{i theta}) = f(r e^{i theta}) on a CircleGrid.
struct DilatedSamples {
    CircleGrid grid;
    std::vector<Complex> values;
};

/// Samples f on the radius-r circle at num_points equispaced angles.
/// Requires num_points even and >= 2*(degree+1) so the L2 quadrature below
/// is alias-free.
DilatedSamples dilate(const AnalyticPoly& f, double radius, int num_points);

/// (1/M) sum |values_j|  -- the L1 mean over the circle.
double norm_l1(const DilatedSamples& s);

/// sqrt((1/M) sum |values_j|^2)  -- quadrature L2 norm.
double norm_l2(const DilatedSamples& s);

/// ((1/M) sum |values_j|^p)^(1/p) for p > 0.
double norm_lp(const DilatedSamples& s, double p);

/// sqrt(sum |a_k|^2 r^{2k}); agrees with norm_l2 to 1e-12 relative whenever
/// the sampling precondition holds.
double norm_l2_parseval(const AnalyticPoly& f, double radius);

/// (1/M) sum |s_j - t_j|. The two sample sets must share the angular grid.
double norm_l1_diff(const DilatedSamples& s, const DilatedSamples& t);

/// ((1/M) sum |s_j - t_j|^p)^(1/p), same grid requirement.
double norm_lp_diff(const DilatedSamples& s, const DilatedSamples& t, double p);

} // namespace riesz
