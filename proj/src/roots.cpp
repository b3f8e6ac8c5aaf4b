#include "riesz/roots.hpp"

#include "riesz/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riesz {

namespace {

// p(z) and p'(z) in one pass over the (monic-scaled) coefficients.
void eval_with_derivative(const std::vector<Complex>& coeffs, Complex z,
                          Complex& value, Complex& derivative) {
    value = Complex(0.0);
    derivative = Complex(0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        derivative = derivative * z + value;
        value = value * z + coeffs[k];
    }
}

bool aberth_ehrlich(const std::vector<Complex>& coeffs,
                    std::vector<Complex>& roots,
                    const RootSolveOptions& opts) {
    const std::size_t n = roots.size();
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex p, dp;
            eval_with_derivative(coeffs, roots[i], p, dp);
            if (p == Complex(0.0)) continue;
            if (dp == Complex(0.0)) {
                // Stationary start; nudge off the critical point.
                roots[i] += Complex(1e-8, 1e-8);
                max_step = 1.0;
                continue;
            }
            const Complex newton = p / dp;
            Complex repulsion(0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex d = roots[i] - roots[j];
                if (std::norm(d) < 1e-300) continue;
                repulsion += 1.0 / d;
            }
            const Complex denom = 1.0 - newton * repulsion;
            const Complex step = (std::norm(denom) < 1e-300) ? newton : newton / denom;
            roots[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(roots[i])));
        }
        if (max_step <= opts.tolerance) return true;
    }
    return false;
}

std::vector<Complex> companion_eigenvalues(const std::vector<Complex>& coeffs) {
    const std::size_t n = coeffs.size() - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
    const Complex lead = coeffs.back();
    for (std::size_t i = 1; i < n; ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) =
            -coeffs[i] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<Complex> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        roots[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    }
    return roots;
}

void newton_polish(const std::vector<Complex>& coeffs,
                   std::vector<Complex>& roots) {
    for (auto& root : roots) {
        for (int pass = 0; pass < 3; ++pass) {
            Complex p, dp;
            eval_with_derivative(coeffs, root, p, dp);
            if (std::abs(dp) < 1e-200) break;
            const Complex step = p / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            // A polish step should be a correction, not a jump; near multiple
            // roots Newton can overshoot, so keep only small moves.
            if (std::abs(step) > 0.1 * (1.0 + std::abs(root))) break;
            root -= step;
        }
    }
}

} // namespace

std::vector<Complex> polynomial_roots(const AnalyticPoly& f,
                                      const RootSolveOptions& opts) {
    if (f.is_zero()) {
        throw std::invalid_argument("polynomial_roots: zero polynomial");
    }

    // Exact zero leading coefficients are roots at the origin.
    std::vector<Complex> coeffs(f.coeffs().begin(), f.coeffs().end());
    std::vector<Complex> roots;
    std::size_t origin_multiplicity = 0;
    while (origin_multiplicity < coeffs.size() &&
           coeffs[origin_multiplicity] == Complex(0.0)) {
        ++origin_multiplicity;
    }
    roots.assign(origin_multiplicity, Complex(0.0));
    coeffs.erase(coeffs.begin(),
                 coeffs.begin() + static_cast<std::ptrdiff_t>(origin_multiplicity));

    const std::size_t n = coeffs.size() - 1;
    if (n == 0) return roots;

    // Scale so the iteration works near unit magnitude.
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    for (auto& c : coeffs) c /= scale;

    Rng rng(opts.seed);
    std::vector<Complex> candidates(n);
    const double radius = std::max(opts.start_radius, 1e-3);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = 2.0 * M_PI * (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(n) +
                             0.5 * rng.uniform(-1.0, 1.0);
        const double rad = radius * (1.0 + 0.25 * rng.uniform(-1.0, 1.0));
        candidates[i] = rad * Complex(std::cos(angle), std::sin(angle));
    }

    if (!aberth_ehrlich(coeffs, candidates, opts)) {
        candidates = companion_eigenvalues(coeffs);
    }
    newton_polish(coeffs, candidates);

    roots.insert(roots.end(), candidates.begin(), candidates.end());
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace riesz
