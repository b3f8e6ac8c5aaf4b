#include "riesz/measures.hpp"

#include "riesz/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riesz {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t state = seed + counter * 0x9E3779B97F4A7C15ull;
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

Complex unit_point(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Density evaluated at e^{i theta}; the density lives on the first variable.
Complex density_value(const TrigPoly& density, Complex chi) {
    const Complex coords[1] = {chi};
    return density.evaluate(coords);
}

} // namespace

CircleMeasure::CircleMeasure(std::vector<Atom> atoms, TrigPoly density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
    if (density_.dimension() > 1) {
        throw std::invalid_argument("CircleMeasure: density must be one-variable");
    }
    for (auto& atom : atoms_) {
        if (!(atom.angle >= 0.0 && atom.angle < kTwoPi)) {
            throw std::invalid_argument("CircleMeasure: atom angle must lie in [0, 2pi)");
        }
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
            if (atoms_[i].angle == atoms_[j].angle) {
                throw std::invalid_argument("CircleMeasure: atom angles must be distinct");
            }
        }
    }
}

CircleMeasure CircleMeasure::point_mass(double angle, Complex weight) {
    return CircleMeasure({Atom{angle, weight}}, TrigPoly{});
}

CircleMeasure CircleMeasure::from_density(TrigPoly density) {
    return CircleMeasure({}, std::move(density));
}

double CircleMeasure::total_variation(int num_points) const {
    double tv = 0.0;
    for (const auto& atom : atoms_) tv += std::abs(atom.weight);
    if (!density_.is_zero()) {
        CompensatedSum acc;
        for (int j = 0; j < num_points; ++j) {
            acc.add(std::abs(density_value(density_, unit_point(kTwoPi * j / num_points))));
        }
        tv += acc.value() / num_points;
    }
    return tv;
}

Complex fourier_coefficient(const CircleMeasure& mu, int k) {
    Complex acc(0.0);
    for (const auto& atom : mu.atoms()) {
        acc += atom.weight * unit_point(-k * atom.angle);
    }
    acc += mu.density().coefficient(MultiIndex{k});
    return acc;
}

double max_negative_coefficient(const CircleMeasure& mu, int frequencies) {
    double worst = 0.0;
    for (int k = 1; k <= frequencies; ++k) {
        worst = std::max(worst, std::abs(fourier_coefficient(mu, -k)));
    }
    return worst;
}

bool is_analytic(const CircleMeasure& mu, int frequencies, double tol) {
    if (frequencies < 1) {
        throw std::invalid_argument("is_analytic: need frequencies >= 1");
    }
    return max_negative_coefficient(mu, frequencies) <= tol;
}

double poisson_kernel(Complex z, Complex chi) {
    return (1.0 - std::norm(z)) / std::norm(chi - z);
}

Complex poisson_extension(const CircleMeasure& mu, Complex z) {
    if (!(std::abs(z) < 1.0)) {
        throw std::invalid_argument("poisson_extension: need |z| < 1");
    }
    Complex acc(0.0);
    for (const auto& atom : mu.atoms()) {
        acc += atom.weight * poisson_kernel(z, unit_point(atom.angle));
    }
    // Harmonic extension pairs e^{ik theta} with z^k and e^{-ik theta} with
    // conj(z)^k, term by term; exact for a polynomial density.
    for (const auto& [kappa, coeff] : mu.density().terms()) {
        const int k = kappa.exponent(1);
        Complex zk(1.0);
        const Complex base = k >= 0 ? z : std::conj(z);
        for (int i = 0; i < std::abs(k); ++i) zk *= base;
        acc += coeff * zk;
    }
    return acc;
}

FmRieszReport fm_riesz_demo(const CircleMeasure& mu, std::span<const double> radii,
                            int num_points, int coefficient_depth) {
    if (radii.size() < 2) {
        throw std::invalid_argument("fm_riesz_demo: need at least two radii");
    }
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        if (!(radii[i] < radii[i + 1])) {
            throw std::invalid_argument("fm_riesz_demo: radii must increase");
        }
    }
    if (!(radii.front() >= 0.0 && radii.back() < 1.0)) {
        throw std::invalid_argument("fm_riesz_demo: radii must lie in [0, 1)");
    }
    if (coefficient_depth < 1 || 2 * coefficient_depth >= num_points) {
        throw std::invalid_argument("fm_riesz_demo: coefficient depth vs grid mismatch");
    }

    FmRieszReport report;
    report.analytic_mode = is_analytic(mu, coefficient_depth);
    report.radii.assign(radii.begin(), radii.end());
    report.coefficient_depth = coefficient_depth;
    const double tv = mu.total_variation(num_points);

    std::vector<std::vector<Complex>> samples(radii.size());
    std::vector<double> l1(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        samples[i].resize(static_cast<std::size_t>(num_points));
        CompensatedSum acc;
        for (int j = 0; j < num_points; ++j) {
            const Complex z = radii[i] * unit_point(kTwoPi * j / num_points);
            samples[i][static_cast<std::size_t>(j)] = poisson_extension(mu, z);
            acc.add(std::abs(samples[i][static_cast<std::size_t>(j)]));
        }
        l1[i] = acc.value() / num_points;
        report.fubini_gaps.push_back(tv - l1[i]);
    }

    report.min_increment = std::numeric_limits<double>::infinity();
    report.max_increment = 0.0;
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        CompensatedSum acc;
        for (int j = 0; j < num_points; ++j) {
            acc.add(std::abs(samples[i + 1][static_cast<std::size_t>(j)] -
                             samples[i][static_cast<std::size_t>(j)]));
        }
        const double increment = acc.value() / num_points;
        report.increments.push_back(increment);
        report.bounds.push_back(
            2.0 * std::sqrt(std::max(l1[i + 1] * l1[i + 1] - l1[i] * l1[i], 0.0)));
        report.min_increment = std::min(report.min_increment, increment);
        report.max_increment = std::max(report.max_increment, increment);
    }

    // Boundary coefficients from the outermost circle: the k-th coefficient
    // of the extension at radius rho is mu_hat(k) * rho^{|k|}, so dividing by
    // rho^{|k|} extrapolates the r -> 1 limit frequency by frequency.
    const double rho = radii.back();
    const auto& boundary = samples.back();
    report.max_coefficient_residual = 0.0;
    for (int k = -coefficient_depth; k <= coefficient_depth; ++k) {
        Complex dft(0.0);
        for (int j = 0; j < num_points; ++j) {
            dft += boundary[static_cast<std::size_t>(j)] *
                   unit_point(-kTwoPi * k * j / num_points);
        }
        dft /= static_cast<double>(num_points);
        const double decay = std::pow(rho, std::abs(k));
        const Complex recovered = dft / decay;
        report.max_coefficient_residual =
            std::max(report.max_coefficient_residual,
                     std::abs(recovered - fourier_coefficient(mu, k)));
    }
    return report;
}

PolydiscPoint PolydiscPoint::from_coords(std::vector<Complex> coords) {
    for (const auto& z : coords) {
        if (!(std::abs(z) < 1.0)) {
            throw std::invalid_argument("PolydiscPoint: coordinates must satisfy |z| < 1");
        }
    }
    PolydiscPoint p;
    p.kind_ = Kind::Coords;
    p.coords_ = std::move(coords);
    p.classification_ = Classification::L1; // finitely many nonzero entries
    p.rule_ = "coords";
    return p;
}

PolydiscPoint PolydiscPoint::geometric(double c, double q) {
    if (!(std::abs(q) < 1.0) || !(std::abs(c * q) < 1.0)) {
        throw std::invalid_argument("PolydiscPoint::geometric: need |q| < 1 and |c q| < 1");
    }
    PolydiscPoint p;
    p.kind_ = Kind::Geometric;
    p.c_ = c;
    p.q_ = q;
    p.classification_ = Classification::L1; // geometric tails always sum
    p.rule_ = "geometric(c=" + std::to_string(c) + ", q=" + std::to_string(q) + ")";
    return p;
}

PolydiscPoint PolydiscPoint::power(double c, double a, int shift) {
    if (!(a > 0.0) || shift < 0) {
        throw std::invalid_argument("PolydiscPoint::power: need a > 0 and shift >= 0");
    }
    PolydiscPoint p;
    p.kind_ = Kind::Power;
    p.c_ = c;
    p.a_ = a;
    p.shift_ = shift;
    if (!(std::abs(p.coord(1)) < 1.0)) {
        throw std::invalid_argument("PolydiscPoint::power: first coordinate must satisfy |z| < 1");
    }
    // sum (j)^{-a} converges iff a > 1; sum (j)^{-2a} iff a > 1/2.
    if (c == 0.0 || a > 1.0) {
        p.classification_ = Classification::L1;
    } else if (a > 0.5) {
        p.classification_ = Classification::L2NotL1;
    } else {
        p.classification_ = Classification::OutsideL2;
    }
    p.rule_ = "power(c=" + std::to_string(c) + ", a=" + std::to_string(a) +
              ", shift=" + std::to_string(shift) + ")";
    return p;
}

Complex PolydiscPoint::coord(int j) const {
    if (j < 1) throw std::invalid_argument("PolydiscPoint::coord: j >= 1");
    switch (kind_) {
        case Kind::Coords:
            return static_cast<std::size_t>(j) <= coords_.size()
                       ? coords_[static_cast<std::size_t>(j - 1)]
                       : Complex(0.0);
        case Kind::Geometric:
            return Complex(c_ * std::pow(q_, j));
        case Kind::Power:
            return Complex(c_ * std::pow(static_cast<double>(j + shift_), -a_));
    }
    return Complex(0.0);
}

std::string to_string(PolydiscPoint::Classification c) {
    switch (c) {
        case PolydiscPoint::Classification::L1: return "l1";
        case PolydiscPoint::Classification::L2NotL1: return "l2-not-l1";
        case PolydiscPoint::Classification::OutsideL2: return "outside-l2";
    }
    return "unknown";
}

PoissonChain::PoissonChain(PolydiscPoint point, int depth)
    : point_(std::move(point)), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("PoissonChain: depth >= 1");
}

double PoissonChain::evaluate(int d, std::span<const Complex> chi) const {
    if (d < 0 || d > depth_) {
        throw std::invalid_argument("PoissonChain::evaluate: d out of range");
    }
    if (static_cast<int>(chi.size()) < d) {
        throw std::invalid_argument("PoissonChain::evaluate: too few coordinates");
    }
    double acc = 1.0;
    for (int j = 1; j <= d; ++j) {
        acc *= poisson_kernel(point_.coord(j), chi[static_cast<std::size_t>(j - 1)]);
    }
    return acc;
}

double PoissonChain::chain_residual(int d, int quad_points, int probes,
                                    std::uint64_t seed) const {
    if (d < 1 || d + 1 > depth_) {
        throw std::invalid_argument("PoissonChain::chain_residual: d out of range");
    }
    std::vector<Complex> chi(static_cast<std::size_t>(d) + 1);
    double worst = 0.0;
    for (int probe = 0; probe < probes; ++probe) {
        for (int j = 0; j < d; ++j) {
            const double u = counter_uniform(
                seed, static_cast<std::uint64_t>(probe) * static_cast<std::uint64_t>(d) +
                          static_cast<std::uint64_t>(j));
            chi[static_cast<std::size_t>(j)] = unit_point(kTwoPi * u);
        }
        const double f_d = evaluate(d, chi);
        CompensatedSum average;
        for (int m = 0; m < quad_points; ++m) {
            chi[static_cast<std::size_t>(d)] = unit_point(kTwoPi * m / quad_points);
            average.add(evaluate(d + 1, chi));
        }
        worst = std::max(worst, std::abs(average.value() / quad_points - f_d));
    }
    return worst;
}

double PoissonChain::l1_mass(int d, int quad_points) const {
    // Kernels are nonnegative, so the L1 norm factors into 1-D masses.
    double acc = 1.0;
    for (int j = 1; j <= d; ++j) {
        CompensatedSum mass;
        for (int m = 0; m < quad_points; ++m) {
            mass.add(poisson_kernel(point_.coord(j), unit_point(kTwoPi * m / quad_points)));
        }
        acc *= mass.value() / quad_points;
    }
    return acc;
}

double chain_increment_l1(const PolydiscPoint& point, int d, int num_points) {
    if (d < 0) throw std::invalid_argument("chain_increment_l1: d >= 0");
    const Complex z = point.coord(d + 1);
    CompensatedSum acc;
    for (int m = 0; m < num_points; ++m) {
        acc.add(std::abs(poisson_kernel(z, unit_point(kTwoPi * m / num_points)) - 1.0));
    }
    return acc.value() / num_points;
}

McEstimate chain_increment_mc(const PolydiscPoint& point, int d,
                              std::int64_t samples, std::uint64_t seed) {
    if (d < 0) throw std::invalid_argument("chain_increment_mc: d >= 0");
    if (samples < 2) throw std::invalid_argument("chain_increment_mc: samples >= 2");
    const int dim = d + 1;
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        double f_d = 1.0;
        for (int j = 1; j <= d; ++j) {
            const double u = counter_uniform(
                seed, static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(dim) +
                          static_cast<std::uint64_t>(j - 1));
            f_d *= poisson_kernel(point.coord(j), unit_point(kTwoPi * u));
        }
        const double u_last = counter_uniform(
            seed, static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(dim) +
                      static_cast<std::uint64_t>(d));
        const double last = poisson_kernel(point.coord(d + 1), unit_point(kTwoPi * u_last));
        const double x = f_d * std::abs(last - 1.0);
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double variance = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    return {mean, std::sqrt(variance / n)};
}

ColeGamelinReport cole_gamelin_diagnostics(const PolydiscPoint& point, int depth,
                                           int num_points) {
    if (depth < 1) throw std::invalid_argument("cole_gamelin_diagnostics: depth >= 1");
    ColeGamelinReport report;
    report.rule = point.rule();
    report.classification = point.classification();
    double l1 = 0.0, l2 = 0.0, product = 1.0;
    for (int j = 1; j <= depth; ++j) {
        const double m = std::abs(point.coord(j));
        l1 += m;
        l2 += m * m;
        product *= poisson_kernel(point.coord(j), Complex(1.0));
        report.l1_partial.push_back(l1);
        report.l2_partial.push_back(l2);
        report.partial_products.push_back(product);
        report.increments.push_back(chain_increment_l1(point, j - 1, num_points));
    }
    return report;
}

InfiniteTorusDemoReport infinite_torus_demo(std::span<const CircleMeasure> factors,
                                            double r, double rho,
                                            int circle_points,
                                            std::int64_t chi_samples,
                                            std::uint64_t seed) {
    if (factors.empty()) {
        throw std::invalid_argument("infinite_torus_demo: need at least one factor");
    }
    if (!(r >= 0.0 && r <= rho && rho < 1.0)) {
        throw std::invalid_argument("infinite_torus_demo: need 0 <= r <= rho < 1");
    }
    if (chi_samples < 2) {
        throw std::invalid_argument("infinite_torus_demo: chi_samples >= 2");
    }
    for (const auto& mu : factors) {
        if (!is_analytic(mu)) {
            throw std::invalid_argument(
                "infinite_torus_demo: every factor must be an analytic measure");
        }
    }

    const int d = static_cast<int>(factors.size());
    InfiniteTorusDemoReport report;
    report.dimension = d;
    report.r = r;
    report.rho = rho;
    report.mass_bound = 1.0;
    for (const auto& mu : factors) report.mass_bound *= mu.total_variation(circle_points);

    // F(chi, z) = prod_j P[mu_j](chi_j z): analytic in z for every fixed chi,
    // so the adjusted dilation bound applies on each slice; averaging over
    // chi preserves it through Cauchy-Schwarz exactly as on the circle.
    double sum_l = 0.0, sum_l_sq = 0.0;
    double sum_nrho = 0.0, sum_nrho_sq = 0.0;
    double sum_gap = 0.0, sum_gap_sq = 0.0;
    for (std::int64_t s = 0; s < chi_samples; ++s) {
        double l = 0.0, n_r = 0.0, n_rho = 0.0;
        std::vector<Complex> chi(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            const double u = counter_uniform(
                seed, static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(d) +
                          static_cast<std::uint64_t>(j));
            chi[static_cast<std::size_t>(j)] = unit_point(kTwoPi * u);
        }
        for (int m = 0; m < circle_points; ++m) {
            const Complex w = unit_point(kTwoPi * m / circle_points);
            Complex at_r(1.0), at_rho(1.0);
            for (int j = 0; j < d; ++j) {
                at_r *= poisson_extension(factors[static_cast<std::size_t>(j)],
                                          chi[static_cast<std::size_t>(j)] * (r * w));
                at_rho *= poisson_extension(factors[static_cast<std::size_t>(j)],
                                            chi[static_cast<std::size_t>(j)] * (rho * w));
            }
            l += std::abs(at_r - at_rho);
            n_r += std::abs(at_r);
            n_rho += std::abs(at_rho);
        }
        l /= circle_points;
        n_r /= circle_points;
        n_rho /= circle_points;
        sum_l += l;
        sum_l_sq += l * l;
        sum_nrho += n_rho;
        sum_nrho_sq += n_rho * n_rho;
        const double gap = n_rho - n_r;
        sum_gap += gap;
        sum_gap_sq += gap * gap;
    }

    const double n = static_cast<double>(chi_samples);
    const double mean_l = sum_l / n;
    const double mean_nrho = sum_nrho / n;
    const double mean_gap = std::max(0.0, sum_gap / n);
    auto std_error = [n](double sum, double sum_sq) {
        const double variance = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
        return std::sqrt(variance / n);
    };

    report.lhs = mean_l;
    report.rhs = 2.0 * std::sqrt(2.0) * std::sqrt(mean_nrho) * std::sqrt(mean_gap);
    report.mass_rho = mean_nrho;
    const double gap_floor = std::max(mean_gap, 1e-12);
    const double se_rhs =
        2.0 * std::sqrt(2.0) *
        (0.5 * std::sqrt(gap_floor / std::max(mean_nrho, 1e-12)) *
             std_error(sum_nrho, sum_nrho_sq) +
         0.5 * std::sqrt(std::max(mean_nrho, 1e-12) / gap_floor) *
             std_error(sum_gap, sum_gap_sq));
    report.tolerance = 1e-6 + 1e-6 * std::max(report.lhs, report.rhs) +
                       3.0 * (std_error(sum_l, sum_l_sq) + se_rhs);
    report.holds = report.lhs <= report.rhs + report.tolerance;
    report.fubini_holds =
        report.mass_rho <=
        report.mass_bound + 1e-9 + 3.0 * std_error(sum_nrho, sum_nrho_sq);
    return report;
}

} // namespace riesz
