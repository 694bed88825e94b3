#include "wwent/detail/gauss_kronrod.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "wwent/errors.hpp"
#include "wwent/summation.hpp"

namespace wwent::detail {

namespace {

// Kronrod abscissae on [0, 1]; odd indices (1, 3, 5) are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel rule15(const std::function<double(double)>& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_centre = f(centre);
    double kronrod = kKronrodWeights[7] * f_centre;
    double gauss = kGaussWeights[3] * f_centre;
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

} // namespace

QuadratureSum integrate_gk15(const std::function<double(double)>& f, double a, double b, Tolerance tol,
                             std::span<const double> breaks, std::size_t budget)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw DomainError("integrate_gk15: need finite a < b");
    if (!(tol.absolute >= 0.0) || !(tol.relative >= 0.0) || (tol.absolute == 0.0 && tol.relative == 0.0))
        throw DomainError("integrate_gk15: tolerance must be positive");

    std::vector<double> edges;
    edges.reserve(breaks.size() + 2);
    edges.push_back(a);
    for (double x : breaks)
        if (x > edges.back() && x < b) edges.push_back(x);
    edges.push_back(b);

    constexpr std::size_t kPerPanel = 15;
    std::size_t evaluations = 0;
    std::priority_queue<Panel> queue;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (evaluations + kPerPanel > budget)
            throw ConvergenceError("integrate_gk15: evaluation budget too small for the initial partition");
        queue.push(rule15(f, edges[i], edges[i + 1]));
        evaluations += kPerPanel;
    }

    // Totals are recomputed from the queue periodically to stop drift from the
    // running updates.
    auto totals = [&queue]() {
        auto copy = queue;
        CompensatedSum v;
        CompensatedSum e;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
        return std::pair{v.value(), e.value()};
    };

    auto [value, error] = totals();
    std::size_t since_refresh = 0;
    for (;;) {
        const double target = std::max(tol.absolute, tol.relative * std::fabs(value));
        if (error <= target) {
            std::tie(value, error) = totals();
            if (error <= std::max(tol.absolute, tol.relative * std::fabs(value)))
                return {value, error, evaluations};
        }
        if (evaluations + 2 * kPerPanel > budget)
            throw ConvergenceError("integrate_gk15: evaluation budget exhausted before reaching tolerance");

        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw ConvergenceError("integrate_gk15: interval cannot be subdivided further");
        queue.pop();
        const Panel left = rule15(f, worst.a, mid);
        const Panel right = rule15(f, mid, worst.b);
        evaluations += 2 * kPerPanel;
        queue.push(left);
        queue.push(right);

        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        if (++since_refresh == 64) {
            std::tie(value, error) = totals();
            since_refresh = 0;
        }
    }
}

} // namespace wwent::detail
