#pragma once

// Adaptive numerical integration of the Lorentzian-weighted integrals that the
// closed forms evaluate analytically. Serves as an independent check on those
// closed forms and on the flat-coupling (nu^3 -> omega^3) approximation.
// All frequencies are detunings in units of Gamma.

#include <cstddef>

namespace wwent::quadrature {

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr double kDefaultCutoff = 1e6;
inline constexpr double kDefaultOmegaTilde = 1e8;

// Integral of 1 / (x^2 + 1/4) over [a, b]; either limit may be infinite
// (handled by x = tan(u)). Exact value 2 [atan(2b) - atan(2a)].
IntegralResult lorentzian_band_integral(double a, double b, double tol);

// (1 / 2 pi) times the integral over the real line of
//   [1 + e^{-s} - 2 e^{-s/2} cos(x s)] / (x^2 + 1/4),   s = Gamma t,
// the ground-state population summed from |c_b(x)|^2. Exact value 1 - e^{-s}.
IntegralResult rho_bb_integral(double gamma_t, double tol);

// Relative change of the photon weight of band (delta - eps, delta + eps)
// when the flat numerator is replaced by (1 + x / omega_tilde)^3, both
// weights normalized over (-omega_tilde, cutoff). omega_tilde = omega / Gamma.
double cubic_weight_band_error(double eps_tilde, double delta_tilde, double cutoff = kDefaultCutoff,
                               double omega_tilde = kDefaultOmegaTilde, double tol = 1e-12);

} // namespace wwent::quadrature
