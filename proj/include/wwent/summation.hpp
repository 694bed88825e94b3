#pragma once

#include <cmath>

namespace wwent {

// Neumaier's variant of Kahan summation. Keeps a running compensation term so
// that long sums of terms spanning many magnitudes lose only O(eps) overall.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace wwent
