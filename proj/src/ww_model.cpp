#include "wwent/ww_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wwent/errors.hpp"
#include "wwent/root_finding.hpp"

namespace wwent {

namespace {

void require_finite(double v, const char* name)
{
    if (!std::isfinite(v))
        throw DomainError(std::string(name) + " must be finite");
}

void require_time(double gamma_t)
{
    require_finite(gamma_t, "gamma_t");
    if (gamma_t < 0.0)
        throw DomainError("gamma_t must be nonnegative (negative time)");
}

void require_spec(const PartitionSpec& spec)
{
    require_finite(spec.eps_tilde, "eps_tilde");
    require_finite(spec.delta_tilde, "delta_tilde");
    if (spec.eps_tilde < 0.0)
        throw DomainError("eps_tilde must be nonnegative");
}

double plogp_bits(double p)
{
    return p > 0.0 ? -p * std::log2(p) : 0.0;
}

// Raw lambda_A without validation.
double band_weight(double eps, double delta)
{
    const double v = (std::atan(2.0 * (eps + delta)) + std::atan(2.0 * (eps - delta))) / std::numbers::pi;
    return std::clamp(v, 0.0, 1.0);
}

} // namespace

SpectralWeights::SpectralWeights(double lambda_a, double lambda_b)
    : lambda_a_(lambda_a), lambda_b_(lambda_b)
{
    if (!(lambda_a >= 0.0) || !(lambda_b >= 0.0))
        throw ContractError("spectral weights must be nonnegative");
    if (!(std::fabs(lambda_a + lambda_b - 1.0) <= kSumTolerance))
        throw ContractError("spectral weights must sum to one");
}

SpectralWeights SpectralWeights::from_lambda_a(double lambda_a)
{
    return {lambda_a, 1.0 - lambda_a};
}

double decay_rate_from_dipole(const DipoleParams& p)
{
    const double fields[] = {p.dipole_moment, p.transition_angular_frequency, p.vacuum_permittivity,
                             p.reduced_planck, p.light_speed};
    for (double v : fields) require_finite(v, "dipole parameter");
    if (p.dipole_moment < 0.0)
        throw DomainError("dipole_moment must be nonnegative");
    if (p.transition_angular_frequency <= 0.0 || p.vacuum_permittivity <= 0.0 || p.reduced_planck <= 0.0
        || p.light_speed <= 0.0)
        throw DomainError("dipole parameters must be strictly positive");

    const double w = p.transition_angular_frequency;
    const double c = p.light_speed;
    return (1.0 / (4.0 * std::numbers::pi * p.vacuum_permittivity)) * (4.0 * w * w * w * p.dipole_moment * p.dipole_moment)
         / (3.0 * p.reduced_planck * c * c * c);
}

SpectralWeights partition_weights(const PartitionSpec& spec)
{
    require_spec(spec);
    return SpectralWeights::from_lambda_a(band_weight(spec.eps_tilde, spec.delta_tilde));
}

double binary_entropy(const SpectralWeights& w)
{
    return std::clamp(plogp_bits(w.lambda_a()) + plogp_bits(w.lambda_b()), 0.0, 1.0);
}

double entanglement_deficit(const SpectralWeights& w)
{
    // With lambda_a = 1/2 + d:  1 - H = [(1+2d) ln(1+2d) + (1-2d) ln(1-2d)] / (2 ln 2).
    const double two_d = 2.0 * (w.lambda_a() - 0.5);
    auto xlog1px = [](double x) {
        const double base = 1.0 + x;
        return base > 0.0 ? base * std::log1p(x) : 0.0;
    };
    const double v = (xlog1px(two_d) + xlog1px(-two_d)) / (2.0 * std::numbers::ln2);
    return std::clamp(v, 0.0, 1.0);
}

double partition_entanglement(const PartitionSpec& spec)
{
    return binary_entropy(partition_weights(spec));
}

double critical_epsilon(double delta_tilde)
{
    require_finite(delta_tilde, "delta_tilde");
    const double d = std::fabs(delta_tilde);
    auto excess = [d](double eps) { return band_weight(eps, d) - 0.5; };

    double lo = d;
    double hi = d + 10.0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi = d + 2.0 * (hi - d);
    }
    return bisect(excess, lo, hi, 1e-12);
}

double vacuum_fidelity(const PartitionSpec& spec)
{
    return partition_weights(spec).lambda_b();
}

DecaySnapshot atom_population(double gamma_t)
{
    require_time(gamma_t);
    DecaySnapshot snap;
    snap.gamma_t = gamma_t;
    snap.excited_population = std::exp(-gamma_t);
    snap.ground_population = -std::expm1(-gamma_t);
    snap.atom_field_entropy = binary_entropy({snap.excited_population, snap.ground_population});
    return snap;
}

double atom_field_entanglement(double gamma_t)
{
    return atom_population(gamma_t).atom_field_entropy;
}

double atom_field_entanglement_deficit(double gamma_t)
{
    const auto snap = atom_population(gamma_t);
    return entanglement_deficit({snap.excited_population, snap.ground_population});
}

double field_state_entropy(double gamma_t)
{
    return atom_field_entanglement(gamma_t);
}

double half_life_time() noexcept
{
    return std::numbers::ln2;
}

double entanglement_peak_time(double abs_tol, double search_max)
{
    require_finite(search_max, "search_max");
    if (search_max <= 0.0)
        throw DomainError("search_max must be positive");
    return golden_section_minimize(atom_field_entanglement_deficit, 0.0, search_max, abs_tol);
}

double distillable_bound(double entropy_b, double entropy_ab)
{
    require_finite(entropy_b, "S_B");
    require_finite(entropy_ab, "S_AB");
    if (entropy_b < 0.0 || entropy_ab < 0.0)
        throw DomainError("entropies must be nonnegative");
    return std::max(entropy_b - entropy_ab, 0.0);
}

} // namespace wwent
