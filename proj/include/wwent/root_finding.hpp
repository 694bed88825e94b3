#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <utility>

#include "wwent/errors.hpp"

namespace wwent {

// Bisection for a sign change of f on [lo, hi]. Requires f(lo) and f(hi) of
// opposite sign (or one of them zero). Stops when the bracket is narrower than
// abs_tol or when the midpoint no longer moves.
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol)
{
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        throw ContractError("bisect: root is not bracketed");

    while (hi - lo > abs_tol) {
        const double mid = std::midpoint(lo, hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return std::midpoint(lo, hi);
}

// Golden-section search for the minimum of a unimodal f on [lo, hi].
template <class F>
double golden_section_minimize(F&& f, double lo, double hi, double abs_tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > abs_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (!(c > a && d < b && c <= d)) break;
    }
    return std::midpoint(a, b);
}

} // namespace wwent
