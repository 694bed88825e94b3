#include "wwent/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "wwent/detail/gauss_kronrod.hpp"
#include "wwent/errors.hpp"

namespace wwent::quadrature {

namespace {

using detail::integrate_gk15;
using detail::Tolerance;

constexpr double kPi = std::numbers::pi;

double lorentzian(double x)
{
    return 1.0 / (x * x + 0.25);
}

void require_tol(double tol)
{
    if (!std::isfinite(tol) || tol <= 0.0)
        throw DomainError("tol must be positive and finite");
}

IntegralResult to_result(const detail::QuadratureSum& q)
{
    return {q.value, q.error_estimate, q.evaluations};
}

} // namespace

IntegralResult lorentzian_band_integral(double a, double b, double tol)
{
    require_tol(tol);
    if (std::isnan(a) || std::isnan(b) || !(a < b))
        throw DomainError("lorentzian_band_integral: need a < b");

    if (std::isfinite(a) && std::isfinite(b)) {
        const std::array<double, 1> peak = {0.0};
        return to_result(integrate_gk15(lorentzian, a, b, {tol, 0.0}, peak));
    }

    // x = tan(u): dx / (x^2 + 1/4) = (1 + t^2) / (t^2 + 1/4) du with t = tan(u).
    auto mapped = [](double u) {
        const double t = std::tan(u);
        return (1.0 + t * t) / (t * t + 0.25);
    };
    const std::array<double, 1> peak = {0.0};
    return to_result(integrate_gk15(mapped, std::atan(a), std::atan(b), {tol, 0.0}, peak));
}

IntegralResult rho_bb_integral(double gamma_t, double tol)
{
    require_tol(tol);
    if (!std::isfinite(gamma_t) || gamma_t < 0.0)
        throw DomainError("gamma_t must be finite and nonnegative (negative time)");

    const double s = gamma_t;
    if (s == 0.0) return {0.0, 0.0, 0};

    const double share = tol / 4.0;

    // Non-oscillatory part: (1 + e^{-s}) / (2 pi) * integral of the full Lorentzian.
    const double flat_scale = (1.0 + std::exp(-s)) / (2.0 * kPi);
    const auto flat = lorentzian_band_integral(-INFINITY, INFINITY, share / flat_scale);

    IntegralResult out;
    out.value = flat_scale * flat.value;
    out.error_estimate = flat_scale * flat.error_estimate;
    out.evaluations = flat.evaluations;

    // Cosine part: (2 e^{-s/2} / pi) * C with C = int_0^inf cos(s x) / (x^2 + 1/4) dx,
    // 0 < C <= pi. Dropped when its whole magnitude is below the share.
    const double cos_scale = 2.0 * std::exp(-0.5 * s) / kPi;
    if (cos_scale * kPi <= share) {
        out.error_estimate += cos_scale * kPi;
        return out;
    }

    // Truncate at L with sin(sL) = 0. Two integrations by parts bound the
    // remainder by 2 |f'(L)| / s^2 with f = 1 / (x^2 + 1/4), valid for
    // L > 1 / (2 sqrt 3) where f'' > 0.
    const double tail_target = share / cos_scale;
    const double half_period = kPi / s;
    double length = std::max(1.0, std::cbrt(4.0 / (s * s * tail_target)));
    length = std::ceil(length / half_period) * half_period;

    const double panel = s > 20.0 ? 0.5 * half_period : half_period;
    const double panel_count = std::ceil(length / panel);
    if (panel_count * 15.0 > static_cast<double>(detail::kEvaluationBudget))
        throw ConvergenceError("rho_bb_integral: oscillatory range needs more panels than the evaluation budget allows");

    std::vector<double> breaks;
    breaks.reserve(static_cast<std::size_t>(panel_count));
    for (double k = 1.0; k < panel_count; k += 1.0) breaks.push_back(k * panel);

    auto oscillating = [s](double x) { return std::cos(s * x) / (x * x + 0.25); };
    const auto cosine = integrate_gk15(oscillating, 0.0, length, {share / cos_scale, 0.0}, breaks);
    const double f_prime = 2.0 * length / ((length * length + 0.25) * (length * length + 0.25));
    const double tail_bound = 2.0 * f_prime / (s * s);

    out.value -= cos_scale * cosine.value;
    out.error_estimate += cos_scale * (cosine.error_estimate + tail_bound);
    out.evaluations += cosine.evaluations;
    return out;
}

double cubic_weight_band_error(double eps_tilde, double delta_tilde, double cutoff, double omega_tilde, double tol)
{
    require_tol(tol);
    for (double v : {eps_tilde, delta_tilde, cutoff, omega_tilde})
        if (!std::isfinite(v)) throw DomainError("cubic_weight_band_error: inputs must be finite");
    if (eps_tilde < 0.0) throw DomainError("eps_tilde must be nonnegative");
    if (omega_tilde <= 0.0) throw DomainError("omega_tilde must be positive");

    const double lo = delta_tilde - eps_tilde;
    const double hi = delta_tilde + eps_tilde;
    if (!(cutoff > hi)) throw DomainError("cutoff must lie above the upper band edge");
    if (!(lo > -omega_tilde)) throw DomainError("band must lie above zero frequency (x > -omega_tilde)");
    if (eps_tilde == 0.0) return 0.0;

    // (1 + r)^3 - 1 = r (3 + 3r + r^2), r = x / omega_tilde, kept expanded so
    // the small correction is integrated directly instead of as a difference.
    auto correction = [omega_tilde](double x) {
        const double r = x / omega_tilde;
        return r * (3.0 + r * (3.0 + r)) / (x * x + 0.25);
    };

    const std::array<double, 1> peak = {0.0};
    const double part = tol / 8.0;
    const auto band_flat = integrate_gk15(lorentzian, lo, hi, {0.0, part}, peak);
    const auto norm_flat = integrate_gk15(lorentzian, -omega_tilde, cutoff, {0.0, part}, peak);
    const auto band_corr = integrate_gk15(correction, lo, hi, {part * band_flat.value, 0.0}, peak);
    const auto norm_corr = integrate_gk15(correction, -omega_tilde, cutoff, {part * norm_flat.value, 0.0}, peak);

    const double band_ratio = band_corr.value / band_flat.value;
    const double norm_ratio = norm_corr.value / norm_flat.value;
    return (band_ratio - norm_ratio) / (1.0 + norm_ratio);
}

} // namespace wwent::quadrature
