#include "riesz/lemma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace riesz {

bool LemmaReport::degenerate() const { return std::isnan(ratio); }

namespace {

LemmaReport report_from_samples(const DilatedSamples& at_r,
                                const DilatedSamples& at_rho) {
    LemmaReport rep;
    rep.norm_r = norm_l1(at_r);
    rep.norm_rho = norm_l1(at_rho);
    rep.lhs = norm_l1_diff(at_r, at_rho);

    const double square_gap = rep.norm_rho * rep.norm_rho - rep.norm_r * rep.norm_r;
    rep.rhs_main = 2.0 * std::sqrt(std::max(square_gap, 0.0));
    rep.rhs_adjusted = 2.0 * std::sqrt(2.0) * std::sqrt(rep.norm_rho) *
                       std::sqrt(std::max(rep.norm_rho - rep.norm_r, 0.0));
    rep.monotonicity_violation = rep.norm_rho < rep.norm_r - 1e-10;
    if (rep.rhs_main < kDegenerateBound) {
        rep.ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
        rep.ratio = rep.lhs / (rep.rhs_main / 2.0);
    }
    return rep;
}

void require_radii(double r, double rho) {
    if (!(r >= 0.0 && r <= rho && rho < 1.0)) {
        throw std::invalid_argument("lemma check: need 0 <= r <= rho < 1");
    }
}

} // namespace

LemmaReport check_main_lemma(const AnalyticPoly& f, double r, double rho,
                             int num_points) {
    require_radii(r, rho);
    return report_from_samples(dilate(f, r, num_points), dilate(f, rho, num_points));
}

LemmaReport check_adjusted_lemma(const AnalyticPoly& f, double r, double rho,
                                 int num_points) {
    require_radii(r, rho);
    return report_from_samples(dilate(f, r, num_points), dilate(f, rho, num_points));
}

RadialMeanProfile radial_mean_profile(const AnalyticPoly& f,
                                      std::span<const double> radii,
                                      int num_points) {
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        if (!(radii[i] < radii[i + 1])) {
            throw std::invalid_argument("radial_mean_profile: radii must increase");
        }
    }
    if (!radii.empty() && !(radii.front() >= 0.0 && radii.back() < 1.0)) {
        throw std::invalid_argument("radial_mean_profile: radii must lie in [0, 1)");
    }

    RadialMeanProfile profile;
    profile.radii.assign(radii.begin(), radii.end());
    for (const double r : radii) {
        profile.means.push_back(norm_l1(dilate(f, r, num_points)));
    }

    profile.min_increment = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < profile.means.size(); ++i) {
        profile.min_increment =
            std::min(profile.min_increment, profile.means[i + 1] - profile.means[i]);
    }
    if (profile.means.size() < 2) profile.min_increment = 0.0;

    // log-log chord slopes; only positive radii and positive means qualify.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < profile.means.size(); ++i) {
        if (profile.radii[i] > 0.0 && profile.means[i] > 0.0) {
            xs.push_back(std::log(profile.radii[i]));
            ys.push_back(std::log(profile.means[i]));
        }
    }
    profile.min_convexity = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 2 < xs.size(); ++i) {
        const double left = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        const double right = (ys[i + 2] - ys[i + 1]) / (xs[i + 2] - xs[i + 1]);
        profile.convexity.push_back(right - left);
        profile.min_convexity = std::min(profile.min_convexity, right - left);
    }
    if (profile.convexity.empty()) profile.min_convexity = 0.0;
    return profile;
}

double poisson_control(Complex w, Complex z) {
    const Complex wz = w * z;
    const Complex denom = 1.0 - std::conj(w) * z;
    return (1.0 - std::norm(wz)) / std::norm(denom);
}

LemmaReport negative_control_poisson(Complex w, double r, double rho,
                                     int num_points) {
    require_radii(r, rho);
    const CircleGrid grid_r = CircleGrid::make(r, num_points);
    const CircleGrid grid_rho = CircleGrid::make(rho, num_points);
    DilatedSamples at_r{grid_r, {}};
    DilatedSamples at_rho{grid_rho, {}};
    at_r.values.reserve(grid_r.points.size());
    at_rho.values.reserve(grid_rho.points.size());
    for (const auto& z : grid_r.points) at_r.values.emplace_back(poisson_control(w, z));
    for (const auto& z : grid_rho.points) at_rho.values.emplace_back(poisson_control(w, z));
    return report_from_samples(at_r, at_rho);
}

LemmaInstance random_lemma_instance(std::uint64_t seed, std::uint64_t index,
                                    int max_degree) {
    Rng rng = Rng::substream(seed, index);
    LemmaInstance instance;
    instance.degree = max_degree <= 0 ? 0 : rng.uniform_int(1, max_degree);
    std::vector<Complex> coeffs(static_cast<std::size_t>(instance.degree) + 1);
    for (auto& c : coeffs) c = rng.complex_gaussian();
    instance.poly = AnalyticPoly(std::move(coeffs));
    instance.degree = instance.poly.degree(); // a Gaussian draw is never 0, but stay honest
    instance.rho = rng.uniform(0.05, 0.95);
    instance.r = instance.rho * rng.uniform();
    return instance;
}

} // namespace riesz
