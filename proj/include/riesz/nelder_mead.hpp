#pragma once

#include <functional>
#include <span>
#include <vector>

namespace riesz {

struct NelderMeadOptions {
    int max_evaluations = 2000;
    double initial_step = 0.5;
    double f_tolerance = 1e-12; ///< stop when the simplex spread shrinks below
    double x_tolerance = 1e-12;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

/// Downhill-simplex minimization (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Derivative-free on purpose: the objectives here have L1-type
/// kinks everywhere.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& fn,
    std::span<const double> start, const NelderMeadOptions& options = {});

} // namespace riesz
