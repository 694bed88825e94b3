#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace wwent::detail {

struct Tolerance {
    double absolute = 0.0;
    double relative = 0.0;
};

struct QuadratureSum {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t kEvaluationBudget = 1000000;

// Globally adaptive 7-point Gauss / 15-point Kronrod integration over the
// finite interval [a, b]. The initial partition is given by `breaks` (sorted,
// strictly inside (a, b); may be empty). The interval with the largest local
// error |K15 - G7| is bisected until the summed error satisfies
// err <= max(absolute, relative * |value|). Throws ConvergenceError when the
// evaluation budget runs out or intervals can no longer be split.
QuadratureSum integrate_gk15(const std::function<double(double)>& f, double a, double b, Tolerance tol,
                             std::span<const double> breaks = {},
                             std::size_t budget = kEvaluationBudget);

} // namespace wwent::detail
