#include "riesz/circle.hpp"

#include "riesz/summation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace riesz {

namespace {

void trim_trailing_zeros(std::vector<Complex>& coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == Complex(0.0)) {
        coeffs.pop_back();
    }
    if (coeffs.empty()) coeffs.push_back(Complex(0.0));
}

} // namespace

AnalyticPoly::AnalyticPoly(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
    trim_trailing_zeros(coeffs_);
}

AnalyticPoly::AnalyticPoly(std::initializer_list<Complex> coeffs)
    : coeffs_(coeffs) {
    trim_trailing_zeros(coeffs_);
}

bool AnalyticPoly::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != Complex(0.0)) return false;
    }
    return true;
}

double AnalyticPoly::max_coeff_magnitude() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex evaluate(const AnalyticPoly& f, Complex z) {
    const auto coeffs = f.coeffs();
    Complex acc(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

CircleGrid CircleGrid::make(double radius, int num_points) {
    if (num_points < 2 || num_points % 2 != 0) {
        throw std::invalid_argument("CircleGrid: num_points must be even and >= 2");
    }
    if (radius < 0.0 || radius > 1.0) {
        throw std::invalid_argument("CircleGrid: radius must lie in [0, 1]");
    }
    CircleGrid grid;
    grid.radius = radius;
    grid.points.resize(static_cast<std::size_t>(num_points));
    for (int j = 0; j < num_points; ++j) {
        const double theta = 2.0 * M_PI * static_cast<double>(j) /
                             static_cast<double>(num_points);
        grid.points[static_cast<std::size_t>(j)] =
            radius * Complex(std::cos(theta), std::sin(theta));
    }
    return grid;
}

DilatedSamples dilate(const AnalyticPoly& f, double radius, int num_points) {
    if (num_points < 2 * (f.degree() + 1)) {
        throw std::invalid_argument(
            "dilate: need num_points >= 2*(degree+1), got " +
            std::to_string(num_points) + " for degree " +
            std::to_string(f.degree()));
    }
    DilatedSamples s;
    s.grid = CircleGrid::make(radius, num_points);
    s.values.resize(s.grid.points.size());
    for (std::size_t j = 0; j < s.grid.points.size(); ++j) {
        s.values[j] = evaluate(f, s.grid.points[j]);
    }
    return s;
}

double norm_l1(const DilatedSamples& s) {
    CompensatedSum acc;
    for (const auto& v : s.values) acc.add(std::abs(v));
    return acc.value() / static_cast<double>(s.values.size());
}

double norm_l2(const DilatedSamples& s) {
    CompensatedSum acc;
    for (const auto& v : s.values) acc.add(std::norm(v));
    return std::sqrt(acc.value() / static_cast<double>(s.values.size()));
}

double norm_lp(const DilatedSamples& s, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("norm_lp: p must be positive");
    CompensatedSum acc;
    for (const auto& v : s.values) acc.add(std::pow(std::abs(v), p));
    return std::pow(acc.value() / static_cast<double>(s.values.size()), 1.0 / p);
}

double norm_l2_parseval(const AnalyticPoly& f, double radius) {
    const double r2 = radius * radius;
    double acc = 0.0;
    double power = 1.0;
    for (const auto& a : f.coeffs()) {
        acc += std::norm(a) * power;
        power *= r2;
    }
    return std::sqrt(acc);
}

double norm_l1_diff(const DilatedSamples& s, const DilatedSamples& t) {
    if (!s.grid.same_angles(t.grid)) {
        throw std::invalid_argument("norm_l1_diff: sample grids disagree");
    }
    CompensatedSum acc;
    for (std::size_t j = 0; j < s.values.size(); ++j) {
        acc.add(std::abs(s.values[j] - t.values[j]));
    }
    return acc.value() / static_cast<double>(s.values.size());
}

double norm_lp_diff(const DilatedSamples& s, const DilatedSamples& t, double p) {
    if (!s.grid.same_angles(t.grid)) {
        throw std::invalid_argument("norm_lp_diff: sample grids disagree");
    }
    if (!(p > 0.0)) throw std::invalid_argument("norm_lp_diff: p must be positive");
    CompensatedSum acc;
    for (std::size_t j = 0; j < s.values.size(); ++j) {
        acc.add(std::pow(std::abs(s.values[j] - t.values[j]), p));
    }
    return std::pow(acc.value() / static_cast<double>(s.values.size()), 1.0 / p);
}

} // namespace riesz
