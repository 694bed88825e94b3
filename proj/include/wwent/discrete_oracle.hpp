#pragma once

// Finite-mode realization of the one-photon field state left behind by the
// decay, used as a brute-force check on the continuum closed forms.
//
// Detunings are in units of Gamma, x_i = (nu_i - omega) / Gamma. Each mode
// stands for a cell of the continuum with mode-density weight dx_i, so the
// coupling is |g_i|^2 = dx_i / (2 pi) and the photon amplitude is
// p_i proportional to sqrt(dx_i) / (x_i + i/2).

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "wwent/ww_model.hpp"

namespace wwent::oracle {

enum class GridSpacing {
    uniform,    // equal dx over the window
    lorentzian, // x = tan(theta)/2 with equal theta steps: every mode carries equal weight
};

struct DiscreteModeGrid {
    std::size_t mode_count = 0;
    double span = 0.0;   // half-width of the window in units of Gamma
    double center = 0.0; // window centre
    GridSpacing spacing = GridSpacing::uniform;
    std::vector<double> detunings;            // strictly increasing
    std::vector<double> mode_weights;         // dx_i
    std::vector<std::complex<double>> amplitudes; // normalized p_i, sum |p_i|^2 = 1
    // sum dx_i / (2 pi (x_i^2 + 1/4)): photon weight captured by the grid
    // with continuum couplings; tends to 1 - tail_mass.
    double captured_weight = 0.0;
    // Lorentzian mass outside the window, analytic.
    double tail_mass = 0.0;
};

struct PartitionLabels {
    std::vector<bool> in_a;

    std::size_t count_a() const;
};

struct JointStateCoefficients {
    std::complex<double> c_a;
    std::vector<std::complex<double>> c_b;
};

inline constexpr std::size_t kDenseGuard = 4096;
inline constexpr std::size_t kDefaultModes = 200000;
inline constexpr double kDefaultSpan = 1000.0;

DiscreteModeGrid build_mode_grid(std::size_t mode_count, double span, double center = 0.0,
                                 GridSpacing spacing = GridSpacing::uniform);

// Strict inequality: |x_i - delta_tilde| < eps_tilde.
PartitionLabels assign_partition(const DiscreteModeGrid& grid, const PartitionSpec& spec);

// Compensated sums of |p_i|^2 over A and over B.
SpectralWeights reduced_weights(const DiscreteModeGrid& grid, const PartitionLabels& labels);

// rho_A in the basis {|0_A>, |1_m>} for the n_A modes in A, in grid order.
// Throws SizeError if n_A exceeds kDenseGuard.
Eigen::MatrixXcd reduced_density_matrix(const DiscreteModeGrid& grid, const PartitionLabels& labels);

// Descending real spectrum of a Hermitian matrix (Hermitian within 1e-12
// elementwise, otherwise ContractError).
std::vector<double> eigenvalues_hermitian(const Eigen::MatrixXcd& m);

// c_a = e^{-s/2}, c_b,i = g_i (1 - e^{-i x_i s - s/2}) / (x_i + i/2), s = Gamma t.
JointStateCoefficients joint_state_at(const DiscreteModeGrid& grid, double gamma_t);

struct AtomPopulations {
    double excited = 0.0;
    double ground = 0.0;
};

AtomPopulations atom_reduced_populations(const JointStateCoefficients& coeffs);

} // namespace wwent::oracle
