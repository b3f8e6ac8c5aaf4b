#include "riesz/search.hpp"

#include "riesz/nelder_mead.hpp"
#include "riesz/parallel.hpp"
#include "riesz/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace riesz {

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::RZero: return "r-zero";
        case SearchMode::RFree: return "r-free";
        case SearchMode::PVariant: return "p-variant";
    }
    return "unknown";
}

void SearchConfig::validate() const {
    if (degree < 0 || degree > 32) {
        throw std::invalid_argument("SearchConfig: degree must lie in [0, 32]");
    }
    if (restarts < 1) throw std::invalid_argument("SearchConfig: restarts >= 1");
    if (iterations < 8) throw std::invalid_argument("SearchConfig: iterations >= 8");
    if (mode == SearchMode::PVariant && !(p > 0.0)) {
        throw std::invalid_argument("SearchConfig: p must be positive");
    }
    if (search_points < 2 * (degree + 1) || certify_points < 2 * (degree + 1)) {
        throw std::invalid_argument("SearchConfig: quadrature too coarse for degree");
    }
}

double search_objective(std::span<const Complex> coeffs, double r, double rho,
                        int num_points, double p) {
    if (!(r >= 0.0 && r <= rho && rho < 1.0)) {
        throw std::invalid_argument("search_objective: need 0 <= r <= rho < 1");
    }
    const AnalyticPoly f(std::vector<Complex>(coeffs.begin(), coeffs.end()));
    const DilatedSamples at_r = dilate(f, r, num_points);
    const DilatedSamples at_rho = dilate(f, rho, num_points);
    const double n_r = norm_lp(at_r, p);
    const double n_rho = norm_lp(at_rho, p);
    // The squared gap is a difference of near-equal quadratures; below
    // 1e-10 relative to the norm scale it is cancellation noise, not signal,
    // so the instance counts as degenerate rather than letting the optimizer
    // surf rounding errors. The threshold is relative because the objective
    // itself is scale-invariant.
    const double squared_gap = n_rho * n_rho - n_r * n_r;
    if (squared_gap <= 1e-10 * n_rho * n_rho) return 0.0;
    return norm_lp_diff(at_r, at_rho, p) / std::sqrt(squared_gap);
}

std::vector<Complex> normalize_coefficients(std::vector<Complex> coeffs) {
    std::size_t first = coeffs.size();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] != Complex(0.0)) {
            first = k;
            break;
        }
    }
    if (first == coeffs.size()) return coeffs;
    const Complex rotation = std::conj(coeffs[first]) / std::abs(coeffs[first]);
    double norm_sq = 0.0;
    for (auto& c : coeffs) {
        c *= rotation;
        norm_sq += std::norm(c);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& c : coeffs) c *= scale;
    return coeffs;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double y) { return std::log(y / (1.0 - y)); }

// rho never reaches 1: the quadrature lives strictly inside the disc.
constexpr double kRhoCap = 0.999;

struct ParamLayout {
    int degree;
    SearchMode mode;

    std::size_t size() const {
        return 2 * static_cast<std::size_t>(degree + 1) +
               (mode == SearchMode::RZero ? 1 : 2);
    }

    void decode(std::span<const double> x, std::vector<Complex>& coeffs,
                double& r, double& rho) const {
        coeffs.resize(static_cast<std::size_t>(degree + 1));
        for (int k = 0; k <= degree; ++k) {
            coeffs[static_cast<std::size_t>(k)] =
                Complex(x[2 * static_cast<std::size_t>(k)],
                        x[2 * static_cast<std::size_t>(k) + 1]);
        }
        rho = kRhoCap * sigmoid(x[2 * static_cast<std::size_t>(degree + 1)]);
        r = mode == SearchMode::RZero
                ? 0.0
                : rho * sigmoid(x[2 * static_cast<std::size_t>(degree + 1) + 1]);
    }
};

struct RestartResult {
    double best_ratio = 0.0;
    std::vector<double> best_x;
    double max_evaluated = 0.0;
    long evaluations = 0;
};

RestartResult run_restart(const SearchConfig& config, int restart_index) {
    const ParamLayout layout{config.degree, config.mode};
    const double p = config.mode == SearchMode::PVariant ? config.p : 1.0;

    std::vector<double> x0(layout.size(), 0.0);
    if (restart_index == 0) {
        // Deterministic warm start on the near-degenerate ray 1 + eps z,
        // rho close to 1, r pushed to 0: the known way to approach sqrt(2).
        x0[0] = 1.0;
        if (config.degree >= 1) x0[2] = 1e-2;
        x0[2 * static_cast<std::size_t>(config.degree + 1)] = logit(0.99 / kRhoCap);
        if (config.mode != SearchMode::RZero) {
            x0[2 * static_cast<std::size_t>(config.degree + 1) + 1] = -6.0;
        }
    } else {
        Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(restart_index));
        for (int k = 0; k <= config.degree; ++k) {
            x0[2 * static_cast<std::size_t>(k)] = rng.gaussian();
            x0[2 * static_cast<std::size_t>(k) + 1] = rng.gaussian();
        }
        x0[2 * static_cast<std::size_t>(config.degree + 1)] = rng.uniform(-1.0, 6.0);
        if (config.mode != SearchMode::RZero) {
            x0[2 * static_cast<std::size_t>(config.degree + 1) + 1] = rng.uniform(-4.0, 2.0);
        }
    }

    RestartResult result;
    std::vector<Complex> coeffs;
    auto negated_ratio = [&](std::span<const double> x) {
        double r = 0.0, rho = 0.0;
        layout.decode(x, coeffs, r, rho);
        const double ratio = search_objective(coeffs, r, rho, config.search_points, p);
        result.max_evaluated = std::max(result.max_evaluated, ratio);
        return -ratio;
    };

    NelderMeadOptions options;
    options.max_evaluations = config.iterations;
    options.initial_step = restart_index == 0 ? 0.05 : 0.35;
    const NelderMeadResult nm = nelder_mead_minimize(negated_ratio, x0, options);

    result.best_ratio = -nm.value;
    result.best_x = nm.x;
    result.evaluations = nm.evaluations;
    return result;
}

} // namespace

SearchResult maximize(const SearchConfig& config, unsigned threads) {
    config.validate();

    std::vector<RestartResult> outcomes(static_cast<std::size_t>(config.restarts));
    parallel_for(outcomes.size(), threads, [&](std::size_t i) {
        outcomes[i] = run_restart(config, static_cast<int>(i));
    });

    SearchResult result;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& outcome = outcomes[i];
        result.history.push_back(
            {static_cast<int>(i), outcome.best_ratio, outcome.evaluations});
        result.total_evaluations += outcome.evaluations;
        result.max_evaluated_ratio =
            std::max(result.max_evaluated_ratio, outcome.max_evaluated);
        if (outcome.best_ratio > result.best_ratio) {
            result.best_ratio = outcome.best_ratio;
            best_index = i;
        }
    }

    const ParamLayout layout{config.degree, config.mode};
    std::vector<Complex> coeffs;
    double r = 0.0, rho = 0.0;
    layout.decode(outcomes[best_index].best_x, coeffs, r, rho);
    result.r = r;
    result.rho = rho;
    result.coefficients = normalize_coefficients(coeffs);

    const double p = config.mode == SearchMode::PVariant ? config.p : 1.0;
    result.certified_ratio =
        search_objective(coeffs, r, rho, config.certify_points, p);
    const AnalyticPoly best_poly(coeffs);
    result.certificate = check_main_lemma(best_poly, r, rho, config.certify_points);
    return result;
}

} // namespace riesz
