#include "riesz/blaschke.hpp"

#include "riesz/io.hpp"
#include "riesz/roots.hpp"
#include "riesz/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace riesz {

ZeroOnCircleError::ZeroOnCircleError(double rho, double offending_modulus)
    : std::runtime_error("find_zeros: zero within " +
                         std::to_string(kZeroOnCircleDelta) +
                         " of the circle |z| = " + std::to_string(rho) +
                         "; perturb rho"),
      rho_(rho),
      offending_modulus_(offending_modulus) {}

NotFactorizableError::NotFactorizableError(int winding)
    : std::runtime_error("sqrt_branch: nonzero phase winding (" +
                         std::to_string(winding) +
                         "); function is not factorizable on this circle"),
      winding_(winding) {}

Complex BlaschkeProduct::eval(Complex z) const {
    Complex acc(1.0);
    for (const auto& alpha : zeros) {
        acc *= rho * (alpha - z) / (rho * rho - std::conj(alpha) * z);
    }
    return acc;
}

std::vector<Complex> find_zeros(const AnalyticPoly& f, double rho) {
    if (f.is_zero()) {
        throw std::invalid_argument("find_zeros: f is identically zero");
    }
    if (!(rho > 0.0 && rho < 1.0)) {
        throw std::invalid_argument("find_zeros: rho must lie in (0, 1)");
    }
    RootSolveOptions opts;
    opts.start_radius = rho;
    const auto roots = polynomial_roots(f, opts);

    const double residual_cap = 1e-8 * f.max_coeff_magnitude();
    std::vector<Complex> inside;
    for (const auto& root : roots) {
        const double modulus = std::abs(root);
        if (std::abs(modulus - rho) < kZeroOnCircleDelta) {
            throw ZeroOnCircleError(rho, modulus);
        }
        if (modulus < rho) {
            if (std::abs(evaluate(f, root)) > residual_cap) {
                throw std::runtime_error(
                    "find_zeros: root polishing failed to meet the residual bound");
            }
            inside.push_back(root);
        }
    }
    return inside;
}

namespace {

inline double principal_arg_ratio(Complex num, Complex den) {
    return std::arg(num / den);
}

} // namespace

std::vector<Complex> sqrt_branch(std::span<const Complex> values) {
    const std::size_t m = values.size();
    if (m == 0) return {};
    for (const auto& v : values) {
        if (v == Complex(0.0)) {
            throw std::invalid_argument("sqrt_branch: zero sample");
        }
    }

    // Unwrap arg along the loop; the closing step decides the winding.
    std::vector<double> phase(m);
    phase[0] = std::arg(values[0]);
    double total = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        const double step = principal_arg_ratio(values[j], values[j - 1]);
        phase[j] = phase[j - 1] + step;
        total += step;
    }
    total += principal_arg_ratio(values[0], values[m - 1]);
    const int winding = static_cast<int>(std::lround(total / (2.0 * M_PI)));
    if (winding != 0) throw NotFactorizableError(winding);

    std::vector<Complex> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        out[j] = std::sqrt(std::abs(values[j])) *
                 Complex(std::cos(phase[j] / 2.0), std::sin(phase[j] / 2.0));
    }
    return out;
}

Factorization::Factorization(const AnalyticPoly& f, double rho, int num_points)
    : f_(f), rho_(rho), num_points_(num_points) {
    if (num_points < 2 * (f.degree() + 1) || num_points % 2 != 0) {
        throw std::invalid_argument(
            "Factorization: num_points must be even and >= 2*(degree+1)");
    }
    if (f.is_zero()) {
        throw std::invalid_argument("Factorization: f is identically zero");
    }
    if (!(rho > 0.0 && rho < 1.0)) {
        throw std::invalid_argument("Factorization: rho must lie in (0, 1)");
    }

    RootSolveOptions opts;
    opts.start_radius = rho;
    const auto roots = polynomial_roots(f_, opts);
    std::vector<Complex> inside;
    for (const auto& root : roots) {
        const double modulus = std::abs(root);
        if (std::abs(modulus - rho) < kZeroOnCircleDelta) {
            throw ZeroOnCircleError(rho, modulus);
        }
        if (modulus < rho) {
            inside.push_back(root);
        } else {
            outside_roots_.push_back(root);
        }
    }
    blaschke_ = BlaschkeProduct{std::move(inside), rho};
    leading_ = f_.coeffs().back();

    anchor_phase_ = std::arg(eval_f_over_b(Complex(rho, 0.0)));
}

Complex Factorization::eval_f_over_b(Complex z) const {
    // f = leading * prod_all (z - root) and each inside root contributes
    // rho*(alpha - z)/(rho^2 - conj(alpha) z) to B, so the quotient is
    //   F(z) = leading * prod_outside (z - beta)
    //                  * prod_inside ( -(rho^2 - conj(alpha) z) / rho ).
    // No factor vanishes on |z| <= rho, which is the whole point.
    Complex acc = leading_;
    for (const auto& beta : outside_roots_) acc *= z - beta;
    for (const auto& alpha : blaschke_.zeros) {
        acc *= -(rho_ * rho_ - std::conj(alpha) * z) / rho_;
    }
    return acc;
}

double Factorization::continued_phase(Complex from, double phase_from,
                                      Complex to, int depth) const {
    const Complex v_from = eval_f_over_b(from);
    const Complex v_to = eval_f_over_b(to);
    const double step = std::arg(v_to / v_from);
    if (std::abs(step) < M_PI / 2.0) return phase_from + step;
    if (depth >= 48) {
        throw NotFactorizableError(static_cast<int>(std::lround(step / M_PI)));
    }
    const Complex mid = 0.5 * (from + to);
    const double phase_mid = continued_phase(from, phase_from, mid, depth + 1);
    return continued_phase(mid, phase_mid, to, depth + 1);
}

Factorization::Samples Factorization::at(double radius) const {
    if (radius < 0.0 || radius > rho_) {
        throw std::invalid_argument("Factorization::at: radius must lie in [0, rho]");
    }
    const CircleGrid grid = CircleGrid::make(radius, num_points_);
    const std::size_t m = grid.points.size();

    std::vector<Complex> f_over_b(m);
    for (std::size_t j = 0; j < m; ++j) f_over_b[j] = eval_f_over_b(grid.points[j]);

    // Carry the branch from the rho-circle anchor down to this circle, then
    // unwrap around it. Radius 0 collapses to the single point z = 0.
    std::vector<double> phase(m);
    phase[0] = continued_phase(Complex(rho_, 0.0), anchor_phase_,
                               grid.points[0]);
    double loop = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        const double step =
            continued_phase(grid.points[j - 1], 0.0, grid.points[j]);
        phase[j] = phase[j - 1] + step;
        loop += step;
    }
    loop += continued_phase(grid.points[m - 1], 0.0, grid.points[0]);
    const int winding = static_cast<int>(std::lround(loop / (2.0 * M_PI)));
    if (winding != 0) throw NotFactorizableError(winding);

    Samples out;
    out.winding = winding;
    out.h.grid = grid;
    out.h.values.resize(m);
    out.g.grid = grid;
    out.g.values.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Complex root_f =
            std::sqrt(std::abs(f_over_b[j])) *
            Complex(std::cos(phase[j] / 2.0), std::sin(phase[j] / 2.0));
        out.h.values[j] = root_f;
        out.g.values[j] = blaschke_.eval(grid.points[j]) * root_f;
    }
    return out;
}

FactorizationResult factorize(const AnalyticPoly& f, double r, double rho,
                              int num_points) {
    if (!(r >= 0.0 && r <= rho)) {
        throw std::invalid_argument("factorize: need 0 <= r <= rho");
    }
    Factorization fac(f, rho, num_points);
    FactorizationResult result{fac.at(r), fac.at(rho), fac.blaschke()};
    return result;
}

namespace {

double cross_l2(const DilatedSamples& a, const DilatedSamples& b) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        acc.add(std::norm(a.values[j] - b.values[j]));
    }
    return std::sqrt(acc.value() / static_cast<double>(a.values.size()));
}

// (1/M) sum |(a_j - b_j) * c_j|
double difference_product_l1(const DilatedSamples& a, const DilatedSamples& b,
                             const DilatedSamples& c) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        acc.add(std::abs((a.values[j] - b.values[j]) * c.values[j]));
    }
    return acc.value() / static_cast<double>(a.values.size());
}

double clamped_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

} // namespace

bool FactorizationTrace::all_hold() const {
    for (const auto& s : steps) {
        if (!s.holds()) return false;
    }
    return winding_check == 0;
}

std::size_t FactorizationTrace::worst_step() const {
    std::size_t worst = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double m = steps[i].slack + steps[i].tolerance;
        if (m < margin) {
            margin = m;
            worst = i;
        }
    }
    return worst;
}

std::string FactorizationTrace::to_text() const {
    std::ostringstream out;
    out << "r " << format_double(r) << "\n";
    out << "rho " << format_double(rho) << "\n";
    out << "num_points " << num_points << "\n";
    out << "winding_check " << winding_check << "\n";
    out << "norm_g_r_l2 " << format_double(g_r_l2) << "\n";
    out << "norm_g_rho_l2 " << format_double(g_rho_l2) << "\n";
    out << "norm_h_r_l2 " << format_double(h_r_l2) << "\n";
    out << "norm_h_rho_l2 " << format_double(h_rho_l2) << "\n";
    out << "norm_f_r_l1 " << format_double(f_r_l1) << "\n";
    out << "norm_f_rho_l1 " << format_double(f_rho_l1) << "\n";
    for (const auto& s : steps) {
        out << "step " << s.name << " " << format_double(s.lhs) << " "
            << format_double(s.rhs) << " " << format_double(s.slack) << "\n";
    }
    out << "all_hold " << (all_hold() ? 1 : 0) << "\n";
    return out.str();
}

FactorizationTrace trace_inequality_chain(const AnalyticPoly& f, double r,
                                          double rho, int num_points,
                                          double tol_abs, double tol_rel) {
    if (!(r >= 0.0 && r <= rho && rho < 1.0)) {
        throw std::invalid_argument(
            "trace_inequality_chain: need 0 <= r <= rho < 1");
    }

    const FactorizationResult fac = factorize(f, r, rho, num_points);
    const DilatedSamples f_r = dilate(f, r, num_points);
    const DilatedSamples f_rho = dilate(f, rho, num_points);

    FactorizationTrace trace;
    trace.r = r;
    trace.rho = rho;
    trace.num_points = num_points;
    trace.winding_check = std::abs(fac.at_r.winding) + std::abs(fac.at_rho.winding);
    trace.g_r_l2 = norm_l2(fac.at_r.g);
    trace.g_rho_l2 = norm_l2(fac.at_rho.g);
    trace.h_r_l2 = norm_l2(fac.at_r.h);
    trace.h_rho_l2 = norm_l2(fac.at_rho.h);
    trace.f_r_l1 = norm_l1(f_r);
    trace.f_rho_l1 = norm_l1(f_rho);

    const double gr2 = trace.g_r_l2 * trace.g_r_l2;
    const double grho2 = trace.g_rho_l2 * trace.g_rho_l2;
    const double hr2 = trace.h_r_l2 * trace.h_r_l2;
    const double hrho2 = trace.h_rho_l2 * trace.h_rho_l2;

    const double lhs_total = norm_l1_diff(f_r, f_rho);
    const double split_g =
        difference_product_l1(fac.at_r.g, fac.at_rho.g, fac.at_r.h);
    const double split_h =
        difference_product_l1(fac.at_r.h, fac.at_rho.h, fac.at_rho.g);
    const double cs_g = cross_l2(fac.at_r.g, fac.at_rho.g) * trace.h_r_l2;
    const double cs_h = trace.g_rho_l2 * cross_l2(fac.at_r.h, fac.at_rho.h);
    const double orth = clamped_sqrt(grho2 - gr2) * trace.h_r_l2 +
                        trace.g_rho_l2 * clamped_sqrt(hrho2 - hr2);
    const double combined = 2.0 * clamped_sqrt(grho2 * hrho2 - gr2 * hr2);
    const double endpoint =
        2.0 * clamped_sqrt(trace.f_rho_l1 * trace.f_rho_l1 -
                           trace.f_r_l1 * trace.f_r_l1);

    auto push = [&](const std::string& name, double lhs, double rhs) {
        TraceStep step;
        step.name = name;
        step.lhs = lhs;
        step.rhs = rhs;
        step.slack = rhs - lhs;
        step.tolerance = tol_abs + tol_rel * std::max(lhs, rhs);
        trace.steps.push_back(std::move(step));
    };

    push("triangle", lhs_total, split_g + split_h);
    push("cauchy_schwarz", split_g + split_h, cs_g + cs_h);
    push("orthogonality", cs_g + cs_h, orth);
    push("combine", orth, combined);
    push("endpoints", combined, endpoint);

    return trace;
}

} // namespace riesz
