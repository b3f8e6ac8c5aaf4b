#include "riesz/polytorus.hpp"

#include "riesz/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riesz {

namespace {

Complex integer_power(Complex z, int k) {
    if (k < 0) return 1.0 / integer_power(z, -k);
    Complex acc(1.0);
    Complex base = z;
    unsigned e = static_cast<unsigned>(k);
    while (e != 0) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

// One value of the counter-based stream: uniform in [0, 1), a pure function
// of (seed, counter) so sample partitions can be farmed out freely.
double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t state = seed + counter * 0x9E3779B97F4A7C15ull;
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

struct RunningMean {
    CompensatedSum sum;
    CompensatedSum sum_sq;
    std::int64_t count = 0;

    void add(double x) {
        sum.add(x);
        sum_sq.add(x * x);
        ++count;
    }
    double mean() const {
        return count > 0 ? sum.value() / static_cast<double>(count) : 0.0;
    }
    double std_error() const {
        if (count < 2) return 0.0;
        const double n = static_cast<double>(count);
        const double s1 = sum.value();
        const double variance =
            std::max(0.0, (sum_sq.value() - s1 * s1 / n) / (n - 1.0));
        return std::sqrt(variance / n);
    }
};

} // namespace

MultiIndex::MultiIndex(std::initializer_list<int> entries) : entries_(entries) {
    canonicalize();
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    canonicalize();
}

void MultiIndex::canonicalize() {
    while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
}

int MultiIndex::exponent(int j) const {
    if (j < 1 || j > support()) return 0;
    return entries_[static_cast<std::size_t>(j - 1)];
}

bool MultiIndex::is_analytic() const {
    for (int k : entries_) {
        if (k < 0) return false;
    }
    return true;
}

int MultiIndex::degree_beyond(int d) const {
    int total = 0;
    for (int j = d + 1; j <= support(); ++j) total += exponent(j);
    return total;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    std::vector<int> out(std::max(entries_.size(), other.entries_.size()), 0);
    for (std::size_t i = 0; i < entries_.size(); ++i) out[i] += entries_[i];
    for (std::size_t i = 0; i < other.entries_.size(); ++i) {
        out[i] += other.entries_[i];
    }
    return MultiIndex(std::move(out));
}

TrigPoly TrigPoly::constant(Complex c) {
    TrigPoly t;
    t.set(MultiIndex{}, c);
    return t;
}

TrigPoly TrigPoly::monomial(MultiIndex kappa, Complex coeff) {
    TrigPoly t;
    t.set(std::move(kappa), coeff);
    return t;
}

void TrigPoly::set(MultiIndex kappa, Complex coeff) {
    if (coeff == Complex(0.0)) {
        terms_.erase(kappa);
    } else {
        terms_[std::move(kappa)] = coeff;
    }
}

void TrigPoly::add(const MultiIndex& kappa, Complex coeff) {
    auto it = terms_.find(kappa);
    if (it == terms_.end()) {
        if (coeff != Complex(0.0)) terms_.emplace(kappa, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == Complex(0.0)) terms_.erase(it);
}

Complex TrigPoly::coefficient(const MultiIndex& kappa) const {
    auto it = terms_.find(kappa);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

int TrigPoly::dimension() const {
    int d = 0;
    for (const auto& [kappa, coeff] : terms_) d = std::max(d, kappa.support());
    return d;
}

bool TrigPoly::is_analytic() const {
    for (const auto& [kappa, coeff] : terms_) {
        if (!kappa.is_analytic()) return false;
    }
    return true;
}

Complex TrigPoly::evaluate(std::span<const Complex> chi) const {
    if (static_cast<int>(chi.size()) < dimension()) {
        throw std::invalid_argument("TrigPoly::evaluate: too few coordinates");
    }
    Complex acc(0.0);
    for (const auto& [kappa, coeff] : terms_) {
        Complex term = coeff;
        const auto& entries = kappa.entries();
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (entries[j] != 0) term *= integer_power(chi[j], entries[j]);
        }
        acc += term;
    }
    return acc;
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
    TrigPoly out = *this;
    for (const auto& [kappa, coeff] : other.terms_) out.add(kappa, coeff);
    return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& other) const {
    TrigPoly out = *this;
    for (const auto& [kappa, coeff] : other.terms_) out.add(kappa, -coeff);
    return out;
}

TrigPoly TrigPoly::operator*(const TrigPoly& other) const {
    TrigPoly out;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : other.terms_) {
            out.add(ka + kb, ca * cb);
        }
    }
    return out;
}

TrigPoly TrigPoly::operator*(Complex scalar) const {
    TrigPoly out;
    if (scalar == Complex(0.0)) return out;
    for (const auto& [kappa, coeff] : terms_) out.set(kappa, coeff * scalar);
    return out;
}

TrigPoly abschnitt(const TrigPoly& t, int d) {
    if (d < 0) throw std::invalid_argument("abschnitt: d must be >= 0");
    TrigPoly out;
    for (const auto& [kappa, coeff] : t.terms()) {
        if (kappa.support() <= d) out.set(kappa, coeff);
    }
    return out;
}

TrigPoly abschnitt_substitution(const TrigPoly& p, int d) {
    if (d < 0) throw std::invalid_argument("abschnitt_substitution: d must be >= 0");
    if (!p.is_analytic()) {
        throw std::invalid_argument(
            "abschnitt_substitution: polynomial must be analytic to substitute 0");
    }
    // chi_j -> 0 for j > d kills exactly the terms with a positive exponent
    // beyond d (0^0 = 1 keeps the rest untouched).
    TrigPoly out;
    for (const auto& [kappa, coeff] : p.terms()) {
        if (kappa.degree_beyond(d) == 0) out.set(kappa, coeff);
    }
    return out;
}

TorusSampler TorusSampler::tensor(int dimension, int points_per_axis) {
    if (dimension < 1 || dimension > 3) {
        throw std::invalid_argument(
            "TorusSampler::tensor: tensor grids are capped at 3 dimensions; "
            "use monte_carlo beyond");
    }
    if (points_per_axis < 2) {
        throw std::invalid_argument("TorusSampler::tensor: need >= 2 points per axis");
    }
    TorusSampler s;
    s.scheme_ = Scheme::TensorGrid;
    s.dimension_ = dimension;
    s.points_per_axis_ = points_per_axis;
    return s;
}

TorusSampler TorusSampler::monte_carlo(int dimension, std::int64_t samples,
                                       std::uint64_t seed) {
    if (dimension < 1) {
        throw std::invalid_argument("TorusSampler::monte_carlo: dimension >= 1");
    }
    if (samples < 2) {
        throw std::invalid_argument("TorusSampler::monte_carlo: need >= 2 samples");
    }
    TorusSampler s;
    s.scheme_ = Scheme::MonteCarlo;
    s.dimension_ = dimension;
    s.samples_ = samples;
    s.seed_ = seed;
    return s;
}

IntegralEstimate TorusSampler::mean(
    const std::function<double(std::span<const Complex>)>& fn) const {
    std::vector<Complex> chi(static_cast<std::size_t>(dimension_));
    if (scheme_ == Scheme::TensorGrid) {
        const int m = points_per_axis_;
        std::vector<Complex> omega(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            const double theta = 2.0 * M_PI * j / m;
            omega[static_cast<std::size_t>(j)] = Complex(std::cos(theta), std::sin(theta));
        }
        std::vector<int> idx(static_cast<std::size_t>(dimension_), 0);
        CompensatedSum total;
        std::int64_t points = 1;
        for (int j = 0; j < dimension_; ++j) points *= m;
        for (std::int64_t n = 0; n < points; ++n) {
            for (int j = 0; j < dimension_; ++j) {
                chi[static_cast<std::size_t>(j)] =
                    omega[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            }
            total.add(fn(chi));
            for (int j = 0; j < dimension_; ++j) {
                if (++idx[static_cast<std::size_t>(j)] < m) break;
                idx[static_cast<std::size_t>(j)] = 0;
            }
        }
        return {total.value() / static_cast<double>(points), 0.0};
    }

    RunningMean acc;
    for (std::int64_t s = 0; s < samples_; ++s) {
        for (int j = 0; j < dimension_; ++j) {
            const double u = counter_uniform(
                seed_, static_cast<std::uint64_t>(s) *
                           static_cast<std::uint64_t>(dimension_) +
                           static_cast<std::uint64_t>(j));
            const double theta = 2.0 * M_PI * u;
            chi[static_cast<std::size_t>(j)] = Complex(std::cos(theta), std::sin(theta));
        }
        acc.add(fn(chi));
    }
    return {acc.mean(), acc.std_error()};
}

IntegralEstimate TorusSampler::mean_abs_pow(const TrigPoly& t, double p) const {
    if (t.dimension() > dimension_) {
        throw std::invalid_argument("TorusSampler: polynomial dimension exceeds sampler");
    }
    const std::size_t nterms = t.term_count();
    std::vector<Complex> coeffs(nterms);
    std::vector<std::vector<int>> exps(nterms,
                                       std::vector<int>(static_cast<std::size_t>(dimension_), 0));
    std::size_t i = 0;
    for (const auto& [kappa, coeff] : t.terms()) {
        coeffs[i] = coeff;
        for (int j = 1; j <= dimension_; ++j) {
            exps[i][static_cast<std::size_t>(j - 1)] = kappa.exponent(j);
        }
        ++i;
    }

    if (scheme_ == Scheme::TensorGrid) {
        const int m = points_per_axis_;
        std::vector<Complex> omega(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            const double theta = 2.0 * M_PI * j / m;
            omega[static_cast<std::size_t>(j)] = Complex(std::cos(theta), std::sin(theta));
        }
        std::vector<int> idx(static_cast<std::size_t>(dimension_), 0);
        std::int64_t points = 1;
        for (int j = 0; j < dimension_; ++j) points *= m;
        CompensatedSum total;
        for (std::int64_t n = 0; n < points; ++n) {
            Complex value(0.0);
            for (std::size_t k = 0; k < nterms; ++k) {
                long e = 0;
                for (int j = 0; j < dimension_; ++j) {
                    e += static_cast<long>(idx[static_cast<std::size_t>(j)]) *
                         exps[k][static_cast<std::size_t>(j)];
                }
                long r = e % m;
                if (r < 0) r += m;
                value += coeffs[k] * omega[static_cast<std::size_t>(r)];
            }
            total.add(std::pow(std::abs(value), p));
            for (int j = 0; j < dimension_; ++j) {
                if (++idx[static_cast<std::size_t>(j)] < m) break;
                idx[static_cast<std::size_t>(j)] = 0;
            }
        }
        return {total.value() / static_cast<double>(points), 0.0};
    }

    RunningMean acc;
    std::vector<double> u(static_cast<std::size_t>(dimension_));
    for (std::int64_t s = 0; s < samples_; ++s) {
        for (int j = 0; j < dimension_; ++j) {
            u[static_cast<std::size_t>(j)] = counter_uniform(
                seed_, static_cast<std::uint64_t>(s) *
                           static_cast<std::uint64_t>(dimension_) +
                           static_cast<std::uint64_t>(j));
        }
        Complex value(0.0);
        for (std::size_t k = 0; k < nterms; ++k) {
            double phase = 0.0;
            for (int j = 0; j < dimension_; ++j) {
                phase += exps[k][static_cast<std::size_t>(j)] *
                         u[static_cast<std::size_t>(j)];
            }
            phase *= 2.0 * M_PI;
            value += coeffs[k] * Complex(std::cos(phase), std::sin(phase));
        }
        acc.add(std::pow(std::abs(value), p));
    }
    return {acc.mean(), acc.std_error()};
}

NormEstimate norm_lp(const TrigPoly& t, double p, const TorusSampler& sampler) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm_lp: p must be >= 1");
    if (t.is_zero()) return {0.0, 0.0};
    if (sampler.dimension() < t.dimension()) {
        throw std::invalid_argument("norm_lp: sampler dimension too small");
    }
    const IntegralEstimate est = sampler.mean_abs_pow(t, p);
    const double mean = std::max(est.value, 0.0);
    const double value = std::pow(mean, 1.0 / p);
    double se = 0.0;
    if (est.std_error > 0.0 && mean > 0.0) {
        se = est.std_error * value / (p * mean); // delta method through x^(1/p)
    }
    return {value, se};
}

std::vector<NormEstimate> check_abschnitt_monotone(const TrigPoly& t, double p,
                                                   const TorusSampler& sampler) {
    std::vector<NormEstimate> out;
    const int dim = t.dimension();
    for (int d = 1; d <= dim; ++d) {
        out.push_back(norm_lp(abschnitt(t, d), p, sampler));
    }
    out.push_back(norm_lp(t, p, sampler));
    return out;
}

std::vector<NormEstimate> check_lp_density_convergence(
    const TrigPoly& t, double p, const TorusSampler& sampler) {
    std::vector<NormEstimate> out;
    const int dim = t.dimension();
    for (int d = 1; d <= dim; ++d) {
        out.push_back(norm_lp(t - abschnitt(t, d), p, sampler));
    }
    if (out.empty()) out.push_back({0.0, 0.0}); // constants are their own limit
    return out;
}

SliceEmbedding::SliceEmbedding(const TrigPoly& p, int d1) : d1_(d1) {
    if (d1 < 0) throw std::invalid_argument("SliceEmbedding: d1 must be >= 0");
    if (!p.is_analytic()) {
        throw std::invalid_argument("SliceEmbedding: polynomial must be analytic");
    }
    dimension_ = p.dimension();
    int max_degree = 0;
    for (const auto& [kappa, coeff] : p.terms()) {
        max_degree = std::max(max_degree, kappa.degree_beyond(d1));
    }
    groups_.resize(static_cast<std::size_t>(max_degree) + 1);
    for (const auto& [kappa, coeff] : p.terms()) {
        groups_[static_cast<std::size_t>(kappa.degree_beyond(d1))].add(kappa, coeff);
    }
}

AnalyticPoly SliceEmbedding::z_polynomial(std::span<const Complex> chi) const {
    std::vector<Complex> coeffs(groups_.size());
    for (std::size_t t = 0; t < groups_.size(); ++t) {
        coeffs[t] = groups_[t].evaluate(chi);
    }
    return AnalyticPoly(std::move(coeffs));
}

Complex SliceEmbedding::operator()(std::span<const Complex> chi, Complex z) const {
    return riesz::evaluate(z_polynomial(chi), z);
}

namespace {

// Shared chassis for the slice route: visit every chi sample of the sampler.
void for_each_sample(const TorusSampler& sampler,
                     const std::function<void(std::span<const Complex>)>& fn) {
    std::vector<Complex> chi(static_cast<std::size_t>(sampler.dimension()));
    if (sampler.scheme() == TorusSampler::Scheme::TensorGrid) {
        const int m = sampler.points_per_axis();
        const int dim = sampler.dimension();
        std::vector<Complex> omega(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            const double theta = 2.0 * M_PI * j / m;
            omega[static_cast<std::size_t>(j)] = Complex(std::cos(theta), std::sin(theta));
        }
        std::vector<int> idx(static_cast<std::size_t>(dim), 0);
        std::int64_t points = 1;
        for (int j = 0; j < dim; ++j) points *= m;
        for (std::int64_t n = 0; n < points; ++n) {
            for (int j = 0; j < dim; ++j) {
                chi[static_cast<std::size_t>(j)] =
                    omega[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            }
            fn(chi);
            for (int j = 0; j < dim; ++j) {
                if (++idx[static_cast<std::size_t>(j)] < m) break;
                idx[static_cast<std::size_t>(j)] = 0;
            }
        }
        return;
    }
    for (std::int64_t s = 0; s < sampler.samples(); ++s) {
        for (int j = 0; j < sampler.dimension(); ++j) {
            const double u = counter_uniform(
                sampler.seed(), static_cast<std::uint64_t>(s) *
                                    static_cast<std::uint64_t>(sampler.dimension()) +
                                    static_cast<std::uint64_t>(j));
            const double theta = 2.0 * M_PI * u;
            chi[static_cast<std::size_t>(j)] = Complex(std::cos(theta), std::sin(theta));
        }
        fn(chi);
    }
}

} // namespace

H1AbschnittReport check_h1_abschnitt_lemma(const TrigPoly& p, int d1, int d2,
                                           const TorusSampler& sampler,
                                           int circle_points) {
    if (d1 > d2 || d1 < 0) {
        throw std::invalid_argument("check_h1_abschnitt_lemma: need 0 <= d1 <= d2");
    }
    if (p.dimension() > d2) {
        throw std::invalid_argument("check_h1_abschnitt_lemma: dimension(P) must be <= d2");
    }
    if (!p.is_analytic()) {
        throw std::invalid_argument("check_h1_abschnitt_lemma: P must be analytic");
    }
    if (sampler.dimension() < p.dimension()) {
        throw std::invalid_argument("check_h1_abschnitt_lemma: sampler dimension too small");
    }

    constexpr double kTolAbs = 1e-6;
    constexpr double kTolRel = 1e-6;

    H1AbschnittReport report;

    const TrigPoly a1 = abschnitt(p, d1);
    const TrigPoly a2 = abschnitt(p, d2);
    const NormEstimate n1 = norm_lp(a1, 1.0, sampler);
    const NormEstimate n2 = norm_lp(a2, 1.0, sampler);
    const NormEstimate diff = norm_lp(a1 - a2, 1.0, sampler);
    report.norm_d1 = n1.value;
    report.norm_d2 = n2.value;
    report.lhs_direct = diff.value;
    const double gap = std::max(0.0, n2.value - n1.value);
    report.rhs_direct = 2.0 * std::sqrt(2.0) * std::sqrt(n2.value) * std::sqrt(gap);
    // Delta-method error bars; the sqrt derivative is clamped away from the
    // degenerate point n1 == n2 where both sides vanish anyway.
    const double gap_floor = std::max(gap, 1e-12);
    const double se_rhs =
        2.0 * std::sqrt(2.0) *
        (0.5 * std::sqrt(gap_floor / std::max(n2.value, 1e-12)) * n2.std_error +
         0.5 * std::sqrt(std::max(n2.value, 1e-12) / gap_floor) *
             (n1.std_error + n2.std_error));
    report.tol_direct = kTolAbs + kTolRel * std::max(report.lhs_direct, report.rhs_direct) +
                        3.0 * (diff.std_error + se_rhs);
    report.direct_holds = report.lhs_direct <= report.rhs_direct + report.tol_direct;

    // Slice route: embed z along the variables beyond d1, run the
    // one-variable bound at r = 0, rho = 1 for each chi, then average.
    const SliceEmbedding slice(p, d1);
    int mz = std::max(circle_points, 2 * (slice.max_trailing_degree() + 1));
    if (mz % 2 != 0) ++mz;

    RunningMean acc_l, acc_n, acc_b, acc_c0;
    for_each_sample(sampler, [&](std::span<const Complex> chi) {
        const AnalyticPoly zp = slice.z_polynomial(chi);
        const DilatedSamples boundary = dilate(zp, 1.0, mz);
        const Complex c0 = zp.coeff(0);
        double l1 = 0.0;
        double ldiff = 0.0;
        for (const auto& v : boundary.values) {
            l1 += std::abs(v);
            ldiff += std::abs(v - c0);
        }
        l1 /= static_cast<double>(boundary.values.size());
        ldiff /= static_cast<double>(boundary.values.size());
        acc_l.add(ldiff);
        acc_n.add(l1);
        acc_b.add(l1 - std::abs(c0));
        acc_c0.add(std::abs(c0));
    });

    report.lhs_slice = acc_l.mean();
    const double mean_n = acc_n.mean();
    const double mean_b = std::max(0.0, acc_b.mean());
    report.rhs_slice = 2.0 * std::sqrt(2.0) * std::sqrt(mean_n) * std::sqrt(mean_b);
    report.slice_norm_d1 = acc_c0.mean();
    report.slice_norm_d2 = mean_n;
    const double b_floor = std::max(mean_b, 1e-12);
    const double se_rhs_slice =
        2.0 * std::sqrt(2.0) *
        (0.5 * std::sqrt(b_floor / std::max(mean_n, 1e-12)) * acc_n.std_error() +
         0.5 * std::sqrt(std::max(mean_n, 1e-12) / b_floor) * acc_b.std_error());
    report.tol_slice = kTolAbs + kTolRel * std::max(report.lhs_slice, report.rhs_slice) +
                       3.0 * (acc_l.std_error() + se_rhs_slice);
    report.slice_holds = report.lhs_slice <= report.rhs_slice + report.tol_slice;

    return report;
}

ChainReconstruction chain_reconstruct(std::span<const TrigPoly> chain,
                                      const TorusSampler& sampler) {
    if (chain.empty()) {
        throw std::invalid_argument("chain_reconstruct: empty chain");
    }
    for (std::size_t d = 0; d < chain.size(); ++d) {
        if (chain[d].dimension() > static_cast<int>(d) + 1) {
            throw std::invalid_argument(
                "chain_reconstruct: f_d must only depend on the first d variables");
        }
    }

    ChainReconstruction result;
    for (std::size_t d = 0; d + 1 < chain.size(); ++d) {
        if (abschnitt(chain[d + 1], static_cast<int>(d) + 1) != chain[d]) {
            result.ok = false;
            result.first_violation = static_cast<int>(d) + 1;
            return result;
        }
    }

    result.ok = true;
    result.reconstructed = chain.back();
    for (std::size_t d = 0; d + 1 < chain.size(); ++d) {
        const double increment = norm_lp(chain[d + 1] - chain[d], 1.0, sampler).value;
        const double b = norm_lp(chain[d + 1], 1.0, sampler).value;
        const double a = norm_lp(chain[d], 1.0, sampler).value;
        result.increments.push_back(increment);
        result.bounds.push_back(2.0 * std::sqrt(2.0) * std::sqrt(b) *
                                std::sqrt(std::max(0.0, b - a)));
    }
    return result;
}

TrigPoly random_trig_poly(Rng& rng, int dimension, int max_frequency, int terms) {
    TrigPoly t;
    for (int n = 0; n < terms; ++n) {
        std::vector<int> entries(static_cast<std::size_t>(dimension));
        for (auto& e : entries) e = rng.uniform_int(-max_frequency, max_frequency);
        t.add(MultiIndex(std::move(entries)), rng.complex_gaussian());
    }
    return t;
}

TrigPoly random_analytic_trig_poly(Rng& rng, int dimension, int max_degree,
                                   int terms) {
    TrigPoly t;
    for (int n = 0; n < terms; ++n) {
        std::vector<int> entries(static_cast<std::size_t>(dimension));
        for (auto& e : entries) e = rng.uniform_int(0, max_degree);
        t.add(MultiIndex(std::move(entries)), rng.complex_gaussian());
    }
    return t;
}

} // namespace riesz
