#include "wwent/discrete_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "wwent/errors.hpp"
#include "wwent/summation.hpp"

namespace wwent::oracle {

namespace {

constexpr std::complex<double> kHalfI{0.0, 0.5};

void require_labels(const DiscreteModeGrid& grid, const PartitionLabels& labels)
{
    if (labels.in_a.size() != grid.mode_count || grid.amplitudes.size() != grid.mode_count)
        throw ContractError("partition labels do not match the grid length");
}

} // namespace

std::size_t PartitionLabels::count_a() const
{
    return static_cast<std::size_t>(std::count(in_a.begin(), in_a.end(), true));
}

DiscreteModeGrid build_mode_grid(std::size_t mode_count, double span, double center, GridSpacing spacing)
{
    if (mode_count < 1)
        throw DomainError("mode_count must be at least 1");
    if (!std::isfinite(span) || span <= 0.0)
        throw DomainError("span must be positive and finite");
    if (!std::isfinite(center))
        throw DomainError("center must be finite");

    DiscreteModeGrid grid;
    grid.mode_count = mode_count;
    grid.span = span;
    grid.center = center;
    grid.spacing = spacing;
    grid.detunings.resize(mode_count);
    grid.mode_weights.resize(mode_count);
    grid.amplitudes.resize(mode_count);

    const double n = static_cast<double>(mode_count);
    const double lo = center - span;
    const double hi = center + span;

    if (spacing == GridSpacing::uniform) {
        const double h = (hi - lo) / n;
        for (std::size_t i = 0; i < mode_count; ++i) {
            grid.detunings[i] = lo + (static_cast<double>(i) + 0.5) * h;
            grid.mode_weights[i] = h;
        }
    } else {
        // x = tan(theta)/2, dx = 2 (x^2 + 1/4) dtheta.
        const double theta_lo = std::atan(2.0 * lo);
        const double theta_hi = std::atan(2.0 * hi);
        const double dtheta = (theta_hi - theta_lo) / n;
        for (std::size_t i = 0; i < mode_count; ++i) {
            const double x = 0.5 * std::tan(theta_lo + (static_cast<double>(i) + 0.5) * dtheta);
            grid.detunings[i] = x;
            grid.mode_weights[i] = 2.0 * (x * x + 0.25) * dtheta;
        }
    }

    CompensatedSum captured;
    for (std::size_t i = 0; i < mode_count; ++i) {
        const double x = grid.detunings[i];
        const double g = std::sqrt(grid.mode_weights[i] / (2.0 * std::numbers::pi));
        grid.amplitudes[i] = g / (x + kHalfI);
        captured += std::norm(grid.amplitudes[i]);
    }
    grid.captured_weight = captured.value();

    const double scale = 1.0 / std::sqrt(grid.captured_weight);
    for (auto& p : grid.amplitudes) p *= scale;

    grid.tail_mass = 1.0 - partition_weights({span, center}).lambda_a();
    return grid;
}

PartitionLabels assign_partition(const DiscreteModeGrid& grid, const PartitionSpec& spec)
{
    // validates the spec
    static_cast<void>(partition_weights(spec));
    PartitionLabels labels;
    labels.in_a.resize(grid.detunings.size());
    for (std::size_t i = 0; i < grid.detunings.size(); ++i)
        labels.in_a[i] = std::fabs(grid.detunings[i] - spec.delta_tilde) < spec.eps_tilde;
    return labels;
}

SpectralWeights reduced_weights(const DiscreteModeGrid& grid, const PartitionLabels& labels)
{
    require_labels(grid, labels);
    CompensatedSum a;
    CompensatedSum b;
    for (std::size_t i = 0; i < grid.mode_count; ++i) {
        const double w = std::norm(grid.amplitudes[i]);
        if (labels.in_a[i])
            a += w;
        else
            b += w;
    }
    // Divide by the total rather than forming 1 - lambda_a so that swapping
    // A and B swaps the pair bit for bit.
    const double la = a.value();
    const double lb = b.value();
    const double total = la + lb;
    return {la / total, lb / total};
}

Eigen::MatrixXcd reduced_density_matrix(const DiscreteModeGrid& grid, const PartitionLabels& labels)
{
    require_labels(grid, labels);
    const std::size_t n_a = labels.count_a();
    if (n_a > kDenseGuard)
        throw SizeError("partition A has " + std::to_string(n_a) + " modes; dense limit is "
                        + std::to_string(kDenseGuard));

    std::vector<std::complex<double>> p_a;
    p_a.reserve(n_a);
    CompensatedSum vacuum;
    for (std::size_t i = 0; i < grid.mode_count; ++i) {
        if (labels.in_a[i])
            p_a.push_back(grid.amplitudes[i]);
        else
            vacuum += std::norm(grid.amplitudes[i]);
    }

    const auto dim = static_cast<Eigen::Index>(n_a + 1);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(0, 0) = vacuum.value();
    for (Eigen::Index m = 1; m < dim; ++m)
        for (Eigen::Index n = 1; n < dim; ++n)
            rho(m, n) = p_a[static_cast<std::size_t>(m - 1)] * std::conj(p_a[static_cast<std::size_t>(n - 1)]);
    return rho;
}

std::vector<double> eigenvalues_hermitian(const Eigen::MatrixXcd& m)
{
    if (m.rows() != m.cols())
        throw ContractError("eigenvalues_hermitian: matrix is not square");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12)
                throw ContractError("eigenvalues_hermitian: matrix is not Hermitian");
    if (m.rows() == 0) return {};

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eigenvalues_hermitian: eigensolver did not converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

JointStateCoefficients joint_state_at(const DiscreteModeGrid& grid, double gamma_t)
{
    if (!std::isfinite(gamma_t) || gamma_t < 0.0)
        throw DomainError("gamma_t must be finite and nonnegative (negative time)");

    // Undo the grid normalization to get back the continuum coupling g_i.
    const double coupling_scale = std::sqrt(grid.captured_weight);
    const double envelope = std::exp(-0.5 * gamma_t);

    JointStateCoefficients out;
    out.c_a = envelope;
    out.c_b.resize(grid.mode_count);
    for (std::size_t i = 0; i < grid.mode_count; ++i) {
        const double phase = -grid.detunings[i] * gamma_t;
        const std::complex<double> transient = envelope * std::polar(1.0, phase);
        out.c_b[i] = coupling_scale * grid.amplitudes[i] * (1.0 - transient);
    }
    return out;
}

AtomPopulations atom_reduced_populations(const JointStateCoefficients& coeffs)
{
    CompensatedSum ground;
    for (const auto& c : coeffs.c_b) ground += std::norm(c);
    return {std::norm(coeffs.c_a), ground.value()};
}

} // namespace wwent::oracle
