#pragma once

#include "riesz/circle.hpp"
#include "riesz/lemma.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace riesz {

/// What the search varies besides the coefficients.
enum class SearchMode {
    RZero,    ///< r pinned at 0, rho free
    RFree,    ///< both radii free (r = rho * sigmoid(t))
    PVariant, ///< like RFree but with L^p norms, p from the config
};

std::string to_string(SearchMode mode);

struct SearchConfig {
    SearchMode mode = SearchMode::RFree;
    int degree = 8; ///< coefficient count is degree + 1; capped at 32
    int restarts = 64;
    int iterations = 2000; ///< objective evaluations per restart
    std::uint64_t seed = 1;
    double p = 1.0; ///< PVariant exponent, p > 0
    int search_points = 1024;
    int certify_points = 4096;

    void validate() const;
};

struct RestartOutcome {
    int index = 0;
    double best_ratio = 0.0;
    long evaluations = 0;
};

struct SearchResult {
    double best_ratio = 0.0;
    /// Argmax normalized to unit coefficient norm with the first nonzero
    /// coefficient rotated real nonnegative.
    std::vector<Complex> coefficients;
    double r = 0.0;
    double rho = 0.0;
    std::vector<RestartOutcome> history;
    /// Recomputed at certify_points; its ratio must track best_ratio.
    LemmaReport certificate;
    double certified_ratio = 0.0;
    /// Largest ratio seen at any evaluation in any restart (ceiling monitor).
    double max_evaluated_ratio = 0.0;
    long total_evaluations = 0;
};

/// The sharpness ratio ||f_r - f_rho||_p / sqrt(||f_rho||_p^2 - ||f_r||_p^2);
/// 0 by convention when the denominator falls below 1e-10. Invariant under
/// rescaling the coefficients.
double search_objective(std::span<const Complex> coeffs, double r, double rho,
                        int num_points, double p = 1.0);

/// Derivative-free maximization of the ratio with random restarts. Restarts
/// are independent and merged associatively, so the thread count never
/// changes the result.
SearchResult maximize(const SearchConfig& config, unsigned threads = 1);

/// Scale/rotation normal form used for reporting the argmax.
std::vector<Complex> normalize_coefficients(std::vector<Complex> coeffs);

} // namespace riesz
