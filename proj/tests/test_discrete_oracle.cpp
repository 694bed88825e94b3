#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "wwent/discrete_oracle.hpp"
#include "wwent/errors.hpp"
#include "wwent/summation.hpp"

using namespace wwent;
using namespace wwent::oracle;
namespace t = wwent::testing;

namespace {

double total_weight(const DiscreteModeGrid& g)
{
    CompensatedSum s;
    for (const auto& p : g.amplitudes) s += std::norm(p);
    return s.value();
}

PartitionLabels labels_from_mask(std::size_t n, unsigned mask)
{
    PartitionLabels l;
    l.in_a.resize(n);
    for (std::size_t i = 0; i < n; ++i) l.in_a[i] = ((mask >> i) & 1u) != 0;
    return l;
}

} // namespace

TEST_CASE("compensated sum keeps small terms that plain summation drops")
{
    CompensatedSum s;
    s += 1.0;
    for (int i = 0; i < 1000; ++i) s += 1e-17;
    s += -1.0;
    CHECK(s.value() == doctest::Approx(1e-14).epsilon(1e-10));
}

TEST_CASE("mode grid: single mode carries all the weight")
{
    for (auto spacing : {GridSpacing::uniform, GridSpacing::lorentzian}) {
        const auto g = build_mode_grid(1, 3.0, 0.0, spacing);
        REQUIRE(g.amplitudes.size() == 1);
        CHECK(std::norm(g.amplitudes[0]) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("mode grid: two symmetric modes split the photon evenly")
{
    for (auto spacing : {GridSpacing::uniform, GridSpacing::lorentzian}) {
        const auto g = build_mode_grid(2, 4.0, 0.0, spacing);
        CHECK(g.detunings[0] == doctest::Approx(-g.detunings[1]).epsilon(1e-15));
        CHECK(std::norm(g.amplitudes[0]) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::norm(g.amplitudes[1]) == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("mode grid: invariants")
{
    for (auto spacing : {GridSpacing::uniform, GridSpacing::lorentzian}) {
        const auto g = build_mode_grid(5001, 50.0, 1.5, spacing);
        CHECK(total_weight(g) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 1; i < g.mode_count; ++i) CHECK(g.detunings[i] > g.detunings[i - 1]);
        CHECK(g.detunings.front() > 1.5 - 50.0);
        CHECK(g.detunings.back() < 1.5 + 50.0);
        // amplitudes follow sqrt(dx) / (x + i/2) up to one common factor
        const std::complex<double> ref = g.amplitudes[7] * (g.detunings[7] + std::complex<double>(0, 0.5))
                                       / std::sqrt(g.mode_weights[7]);
        for (std::size_t i = 0; i < g.mode_count; i += 97) {
            const auto r = g.amplitudes[i] * (g.detunings[i] + std::complex<double>(0, 0.5)) / std::sqrt(g.mode_weights[i]);
            CHECK(std::abs(r - ref) < 1e-12 * std::abs(ref));
        }
        const double tail = 1.0 - (std::atan(2.0 * 51.5) + std::atan(2.0 * 48.5)) / std::numbers::pi;
        CHECK(g.tail_mass == doctest::Approx(tail).epsilon(1e-12));
    }
}

TEST_CASE("mode grid: lorentzian spacing gives every mode equal weight")
{
    const auto g = build_mode_grid(1000, 100.0, 0.0, GridSpacing::lorentzian);
    for (const auto& p : g.amplitudes) CHECK(std::norm(p) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(g.captured_weight == doctest::Approx(1.0 - g.tail_mass).epsilon(1e-12));
}

TEST_CASE("mode grid rejects bad sizes")
{
    CHECK_THROWS_AS(build_mode_grid(0, 1.0), DomainError);
    CHECK_THROWS_AS(build_mode_grid(10, 0.0), DomainError);
    CHECK_THROWS_AS(build_mode_grid(10, -1.0), DomainError);
}

TEST_CASE("mode grid: central band weight at the default resolution")
{
    const auto g = build_mode_grid(kDefaultModes, kDefaultSpan, 0.0, GridSpacing::uniform);
    CompensatedSum inside;
    for (std::size_t i = 0; i < g.mode_count; ++i)
        if (std::fabs(g.detunings[i]) < 0.5) inside += std::norm(g.amplitudes[i]);
    CHECK(std::fabs(inside.value() - 0.5) < 2e-3);
}

TEST_CASE("partition assignment")
{
    DiscreteModeGrid g;
    g.mode_count = 3;
    g.detunings = {-1.0, 0.0, 1.0};
    g.amplitudes.assign(3, {1.0 / std::sqrt(3.0), 0.0});

    auto labels = assign_partition(g, {0.5, 0.0});
    CHECK(labels.in_a == std::vector<bool>{false, true, false});

    labels = assign_partition(g, {0.0, 0.0});
    CHECK(labels.count_a() == 0);

    // boundary points are excluded
    labels = assign_partition(g, {1.0, 0.0});
    CHECK(labels.in_a == std::vector<bool>{false, true, false});

    const auto wide = build_mode_grid(200, 5.0);
    CHECK(assign_partition(wide, {5.0 + 2.0 + 0.1, 2.0}).count_a() == 200);
    CHECK(assign_partition(wide, {0.0, 1.0}).count_a() == 0);
    CHECK_THROWS_AS(assign_partition(wide, {-1.0, 0.0}), DomainError);
}

TEST_CASE("reduced weights")
{
    const auto two = build_mode_grid(2, 4.0);
    CHECK(reduced_weights(two, labels_from_mask(2, 0b11)).lambda_a() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(reduced_weights(two, labels_from_mask(2, 0b11)).lambda_b() == 0.0);
    const auto one = reduced_weights(two, labels_from_mask(2, 0b01));
    CHECK(one.lambda_a() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(one.lambda_b() == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(reduced_weights(two, labels_from_mask(3, 0)), ContractError);
}

TEST_CASE("reduced weights converge to the closed form at the default resolution")
{
    for (auto spacing : {GridSpacing::uniform, GridSpacing::lorentzian}) {
        const auto g = build_mode_grid(kDefaultModes, kDefaultSpan, 0.0, spacing);
        const auto w = reduced_weights(g, assign_partition(g, {0.5, 0.0}));
        CHECK(std::fabs(w.lambda_a() - 0.5) < 2e-3);
        const auto w22 = reduced_weights(g, assign_partition(g, {2.0, 2.0}));
        CHECK(std::fabs(w22.lambda_a() - t::kLambdaA_2_2) < 2e-3);
    }
}

TEST_CASE("property: exchanging A and B swaps the weights exactly")
{
    const auto g = build_mode_grid(9, 3.0, 0.4);
    for (unsigned mask = 0; mask < (1u << 9); ++mask) {
        const auto w = reduced_weights(g, labels_from_mask(9, mask));
        const auto swapped = reduced_weights(g, labels_from_mask(9, ~mask & 0x1FFu));
        CHECK(swapped.lambda_a() == w.lambda_b());
        CHECK(swapped.lambda_b() == w.lambda_a());
        CHECK(binary_entropy(swapped) == binary_entropy(w));
    }
}

TEST_CASE("reduced density matrix: small cases")
{
    const auto g = build_mode_grid(4, 2.0);
    const auto empty = reduced_density_matrix(g, labels_from_mask(4, 0));
    REQUIRE(empty.rows() == 1);
    CHECK(std::abs(empty(0, 0) - 1.0) < 1e-15);

    const auto single = reduced_density_matrix(g, labels_from_mask(4, 0b0100));
    REQUIRE(single.rows() == 2);
    const double q = std::norm(g.amplitudes[2]);
    CHECK(std::abs(single(0, 0) - (1.0 - q)) < 1e-15);
    CHECK(std::abs(single(1, 1) - q) < 1e-15);
    CHECK(std::abs(single(0, 1)) == 0.0);
}

TEST_CASE("reduced density matrix: Hermitian, unit trace, PSD")
{
    const auto g = build_mode_grid(12, 6.0, -0.7, GridSpacing::lorentzian);
    auto rng = t::make_rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto labels = labels_from_mask(12, static_cast<unsigned>(rng() & 0xFFFu));
        const auto rho = reduced_density_matrix(g, labels);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
        const auto ev = eigenvalues_hermitian(rho);
        CHECK(ev.back() > -1e-14);
        const auto w = reduced_weights(g, labels);
        CHECK(std::fabs(ev[0] - std::max(w.lambda_a(), w.lambda_b())) < 1e-10);
        if (ev.size() > 1) CHECK(std::fabs(ev[1] - std::min(w.lambda_a(), w.lambda_b())) < 1e-10);
        if (ev.size() > 2) CHECK(ev[2] <= 1e-12);
    }
}

TEST_CASE("reduced density matrix enforces the dense guard")
{
    const auto g = build_mode_grid(kDenseGuard + 10, 100.0);
    PartitionLabels all;
    all.in_a.assign(g.mode_count, true);
    CHECK_THROWS_AS(reduced_density_matrix(g, all), SizeError);
    CHECK_THROWS_AS(reduced_density_matrix(g, labels_from_mask(3, 0)), ContractError);
}

TEST_CASE("hermitian eigenvalues")
{
    const auto id = eigenvalues_hermitian(Eigen::MatrixXcd::Identity(3, 3));
    CHECK(id == std::vector<double>{1.0, 1.0, 1.0});

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = 0.7;
    const auto dv = eigenvalues_hermitian(d);
    CHECK(dv[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(dv[1] == doctest::Approx(0.3).epsilon(1e-15));

    auto rng = t::make_rng(5);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXcd v(5);
        for (int i = 0; i < 5; ++i) v(i) = {n01(rng), n01(rng)};
        v.normalize();
        const Eigen::MatrixXcd proj = v * v.adjoint();
        const auto ev = eigenvalues_hermitian(proj);
        CHECK(std::fabs(ev[0] - 1.0) < 1e-12);
        for (std::size_t i = 1; i < ev.size(); ++i) CHECK(std::fabs(ev[i]) < 1e-12);

        Eigen::MatrixXcd a(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) a(i, j) = {n01(rng), n01(rng)};
        const Eigen::MatrixXcd h = a + a.adjoint();
        const auto hv = eigenvalues_hermitian(h);
        double sum = 0.0;
        for (double x : hv) sum += x;
        CHECK(std::fabs(sum - h.trace().real()) < 1e-10);
        for (std::size_t i = 1; i < hv.size(); ++i) CHECK(hv[i] <= hv[i - 1]);
    }

    Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(eigenvalues_hermitian(skew), ContractError);
}

TEST_CASE("joint state: initial condition and errors")
{
    const auto g = build_mode_grid(64, 10.0);
    const auto c = joint_state_at(g, 0.0);
    CHECK(c.c_a == std::complex<double>(1.0, 0.0));
    for (const auto& b : c.c_b) CHECK(std::abs(b) == 0.0);
    CHECK_THROWS_AS(joint_state_at(g, -0.5), DomainError);
}

TEST_CASE("joint state: long times recover the post-decay amplitudes")
{
    const auto g = build_mode_grid(2048, 40.0, 0.0, GridSpacing::lorentzian);
    const auto c = joint_state_at(g, 50.0);
    const std::complex<double> ratio = c.c_b[100] / g.amplitudes[100];
    for (std::size_t i = 0; i < g.mode_count; ++i)
        CHECK(std::abs(c.c_b[i] - ratio * g.amplitudes[i]) <= 1e-10 * std::abs(ratio * g.amplitudes[i]));
}

TEST_CASE("joint state: ground population matches 1 - exp(-Gamma t) on the refined grid")
{
    for (auto spacing : {GridSpacing::uniform, GridSpacing::lorentzian}) {
        const auto g = build_mode_grid(kDefaultModes, kDefaultSpan, 0.0, spacing);
        for (double s : {std::numbers::ln2, 1.0, 5.0}) {
            const auto pops = atom_reduced_populations(joint_state_at(g, s));
            CHECK(pops.excited == doctest::Approx(std::exp(-s)).epsilon(1e-15));
            CHECK(std::fabs(pops.ground - (1.0 - std::exp(-s))) < 2e-3);
        }
    }
    const auto g = build_mode_grid(kDefaultModes, kDefaultSpan);
    const auto start = atom_reduced_populations(joint_state_at(g, 0.0));
    CHECK(start.excited == 1.0);
    CHECK(start.ground == 0.0);
}

TEST_CASE("property: norm deficit tracks the truncated tail and shrinks as the window grows")
{
    const double s = 1.0;
    double prev = 1.0;
    for (double span : {50.0, 100.0, 200.0, 400.0}) {
        const auto g = build_mode_grid(static_cast<std::size_t>(span * 200), span, 0.0, GridSpacing::lorentzian);
        const auto pops = atom_reduced_populations(joint_state_at(g, s));
        const double deficit = 1.0 - (pops.excited + pops.ground);
        CHECK(deficit > 0.0);
        CHECK(deficit < prev);
        // (1 + e^{-s}) times the tail, to within the discretization error
        CHECK(deficit == doctest::Approx((1.0 + std::exp(-s)) * g.tail_mass).epsilon(0.05));
        prev = deficit;
    }
}
