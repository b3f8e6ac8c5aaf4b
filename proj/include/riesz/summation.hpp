#pragma once

#include <cmath>

namespace riesz {

// Neumaier compensated accumulator. Quadrature means must not drift with the
// summation order: identities like "unit kernel mass on every circle" are
// only worth asserting if the sum is correctly rounded, and batch results
// must not depend on how work was partitioned.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            compensation += (sum - t) + x;
        } else {
            compensation += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + compensation; }
};

} // namespace riesz
