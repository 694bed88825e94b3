#pragma once

// Closed-form continuum results for spontaneous emission of a two-level atom
// into the free-space field (Weisskopf-Wigner regime).
//
// Everything except decay_rate_from_dipole works in dimensionless units:
//   eps_tilde   = half-width of frequency band A divided by Gamma
//   delta_tilde = (band centre - atomic frequency) / Gamma
//   gamma_t     = Gamma * t

namespace wwent {

// Physical inputs of the free-space decay constant, SI units.
struct DipoleParams {
    double dipole_moment = 0.0;               // C m
    double transition_angular_frequency = 0.0; // rad/s
    double vacuum_permittivity = 8.8541878128e-12; // F/m
    double reduced_planck = 1.054571817e-34;       // J s
    double light_speed = 299792458.0;              // m/s
};

// Band A = modes with |x - delta_tilde| < eps_tilde; band B is the rest.
struct PartitionSpec {
    double eps_tilde = 0.0;
    double delta_tilde = 0.0;
};

// The two nonzero eigenvalues of the reduced field state of band A:
// lambda_a is the photon weight inside A, lambda_b the vacuum weight.
class SpectralWeights {
public:
    // Throws ContractError unless both weights are nonnegative and sum to one
    // within 1e-14.
    SpectralWeights(double lambda_a, double lambda_b);

    // lambda_b is taken as 1 - lambda_a.
    static SpectralWeights from_lambda_a(double lambda_a);

    double lambda_a() const noexcept { return lambda_a_; }
    double lambda_b() const noexcept { return lambda_b_; }

    friend bool operator==(const SpectralWeights&, const SpectralWeights&) = default;

private:
    double lambda_a_;
    double lambda_b_;
};

struct DecaySnapshot {
    double gamma_t = 0.0;
    double excited_population = 1.0;
    double ground_population = 0.0;
    double atom_field_entropy = 0.0; // bits
};

inline constexpr double kSumTolerance = 1e-14;

// Gamma = (1 / 4 pi eps0) * 4 omega^3 d^2 / (3 hbar c^3), in rad/s.
double decay_rate_from_dipole(const DipoleParams& params);

// lambda_A = [atan(2(eps + delta)) + atan(2(eps - delta))] / pi.
SpectralWeights partition_weights(const PartitionSpec& spec);

// -sum lambda log2 lambda with 0 log 0 = 0.
double binary_entropy(const SpectralWeights& weights);

// 1 - binary_entropy, evaluated without cancellation near the balanced point.
// Resolves |lambda - 1/2| down to the rounding of lambda itself, which the
// entropy cannot do (it is flat to second order there).
double entanglement_deficit(const SpectralWeights& weights);

double partition_entanglement(const PartitionSpec& spec);

// The eps_tilde > |delta_tilde| at which lambda_A = 1/2, by bisection.
// Analytically sqrt(delta^2 + 1/4).
double critical_epsilon(double delta_tilde);

// Tr(rho_A |0><0|) = lambda_B.
double vacuum_fidelity(const PartitionSpec& spec);

DecaySnapshot atom_population(double gamma_t);

double atom_field_entanglement(double gamma_t);
double atom_field_entanglement_deficit(double gamma_t);

// The atom + field state stays pure, so the joint field entropy equals the
// atomic entropy (Araki-Lieb with S(global) = 0).
double field_state_entropy(double gamma_t);

// ln 2: excited population 1/2, one ebit between atom and field.
double half_life_time() noexcept;

// Golden-section location of the atom-field entanglement maximum on
// [0, search_max], using the deficit so the flat peak is resolvable.
double entanglement_peak_time(double abs_tol = 1e-14, double search_max = 5.0);

// max(S_B - S_AB, 0). The bound is displayed as E_D <= max(...) while the
// accompanying text calls it a lower bound; this returns the displayed
// expression and takes no position on the direction.
double distillable_bound(double entropy_b, double entropy_ab);

} // namespace wwent
