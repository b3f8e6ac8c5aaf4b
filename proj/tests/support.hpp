#pragma once

// Shared helpers for the unit and acceptance suites.

#include "riesz/lemma.hpp"
#include "riesz/roots.hpp"

#include <cmath>
#include <cstdint>

namespace riesz::testing {

// Factorization batches pin the quadrature at a fixed resolution, so the
// instance sampler keeps the zeros of f away from the reference circle
// (relative margin 1%); a zero hugging the circle needs a finer grid than
// the batch uses, exactly like the zero-on-the-circle reduction. Redraws
// advance a deterministic attempt counter.
inline LemmaInstance conditioned_factor_instance(std::uint64_t seed,
                                                 std::uint64_t index,
                                                 int max_degree = 16) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        LemmaInstance instance =
            random_lemma_instance(seed, index * 64 + attempt, max_degree);
        bool clear = true;
        for (const auto& root : polynomial_roots(instance.poly)) {
            if (std::abs(std::abs(root) - instance.rho) < 0.01 * instance.rho) {
                clear = false;
                break;
            }
        }
        if (clear) return instance;
    }
}

} // namespace riesz::testing
