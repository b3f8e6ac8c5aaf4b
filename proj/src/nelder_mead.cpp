#include "riesz/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace riesz {

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& fn,
    std::span<const double> start, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) throw std::invalid_argument("nelder_mead_minimize: empty start");

    int evaluations = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evaluations;
        return fn(x);
    };

    std::vector<std::vector<double>> simplex(n + 1,
                                             std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += options.initial_step;
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    };

    std::vector<double> centroid(n), candidate(n);
    while (evaluations < options.max_evaluations) {
        sort_order();
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        const double spread = std::abs(values[worst] - values[best]);
        double extent = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            extent = std::max(extent,
                              std::abs(simplex[worst][i] - simplex[best][i]));
        }
        if (spread <= options.f_tolerance && extent <= options.x_tolerance) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            for (std::size_t i = 0; i < n; ++i) {
                candidate[i] = centroid[i] + coeff * (simplex[worst][i] - centroid[i]);
            }
        };

        blend(-1.0); // reflection
        const double reflected = eval(candidate);
        if (reflected < values[best]) {
            std::vector<double> reflected_point = candidate;
            blend(-2.0); // expansion
            const double expanded = eval(candidate);
            if (expanded < reflected) {
                simplex[worst] = candidate;
                values[worst] = expanded;
            } else {
                simplex[worst] = std::move(reflected_point);
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = candidate;
            values[worst] = reflected;
            continue;
        }

        const bool outside = reflected < values[worst];
        blend(outside ? -0.5 : 0.5); // contraction
        const double contracted = eval(candidate);
        if (contracted < std::min(reflected, values[worst])) {
            simplex[worst] = candidate;
            values[worst] = contracted;
            continue;
        }

        // Shrink toward the best vertex.
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == best) continue;
            for (std::size_t i = 0; i < n; ++i) {
                simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
            }
            values[k] = eval(simplex[k]);
            if (evaluations >= options.max_evaluations) break;
        }
    }

    sort_order();
    NelderMeadResult result;
    result.x = simplex[order[0]];
    result.value = values[order[0]];
    result.evaluations = evaluations;
    return result;
}

} // namespace riesz
