#pragma once

#include "riesz/circle.hpp"

#include <cstdint>
#include <vector>

namespace riesz {

struct RootSolveOptions {
    int max_iterations = 200;
    double tolerance = 1e-14;
    /// Initial guesses are scattered on a circle of this radius.
    double start_radius = 1.0;
    /// Fixed default keeps the solver deterministic run to run.
    std::uint64_t seed = 0x5eed0f1e1dull;
};

/// All complex roots of f counted with multiplicity (size == trimmed degree).
/// Aberth-Ehrlich simultaneous iteration with randomly perturbed starts and
/// Newton polishing; falls back to companion-matrix eigenvalues if the
/// iteration stalls. Throws std::invalid_argument for the zero polynomial.
std::vector<Complex> polynomial_roots(const AnalyticPoly& f,
                                      const RootSolveOptions& opts = {});

} // namespace riesz
