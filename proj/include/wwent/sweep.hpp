#pragma once

// Parameter sweeps that regenerate the data behind the four figures
// (entanglement vs band width, vs detuning, vs time; vacuum fidelity map),
// plus the discrete-vs-continuum oracle comparison and the quadrature
// identity suite.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wwent/discrete_oracle.hpp"
#include "wwent/ww_model.hpp"

namespace wwent::sweeps {

inline constexpr std::string_view kToolVersion = "wwent 1.0.0";

enum class SweepKind { epsilon, delta, time, fidelity_grid, oracle_check, verify };
enum class OutputFormat { csv, json };

std::string_view to_string(SweepKind kind);

// Inclusive linear range with `steps` points, min < max, steps >= 2.
struct Range {
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 2;

    // Points are ((steps-1-i) min + i max) / (steps-1): endpoints are exact and
    // a range symmetric about zero gives exactly mirrored points.
    std::vector<double> values() const;
    void validate(std::string_view name) const;
    std::string to_string() const;
};

// "min:max:steps". Throws ConfigError naming `name` on malformed text.
Range parse_range(std::string_view text, std::string_view name);
// "a,b,c". Throws ConfigError naming `name` on malformed text.
std::vector<double> parse_list(std::string_view text, std::string_view name);

struct SweepConfig {
    SweepKind kind = SweepKind::epsilon;
    std::vector<std::pair<std::string, double>> fixed_params;
    std::vector<Range> ranges;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
};

struct SweepResult {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    const std::string* find_metadata(std::string_view key) const;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// Worker count: WW_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
std::size_t worker_count();

// Evaluates fn(i) for i in [0, n) on worker threads. Each index is written by
// exactly one worker, so the caller's output order does not depend on
// scheduling. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Columns: eps_tilde, S(delta=...) per delta value.
SweepResult sweep_epsilon(std::span<const double> delta_values, const Range& eps_range);

// Columns: delta_tilde, S(eps=...) per eps value.
SweepResult sweep_delta(std::span<const double> eps_values, const Range& delta_range);

// Columns: gamma_t, excited_population, atom_field_entropy.
SweepResult sweep_time(const Range& time_range);

// Rows (eps_tilde, delta_tilde, fidelity), eps outer, delta inner.
SweepResult grid_fidelity(const Range& eps_range, const Range& delta_range);

struct OracleGridParams {
    std::size_t modes = oracle::kDefaultModes;
    double span = oracle::kDefaultSpan;
    oracle::GridSpacing spacing = oracle::GridSpacing::lorentzian;
};

inline constexpr std::size_t kMinOracleModes = 1000;
inline constexpr std::size_t kMaxOracleModes = 50000000;

// Rows (eps_tilde, delta_tilde, lambda_a_closed, lambda_a_discrete, abs_error);
// metadata carries max_abs_error.
SweepResult oracle_check(const OracleGridParams& grid, std::span<const PartitionSpec> specs);
SweepResult oracle_check(const OracleGridParams& grid, const Range& eps_range, const Range& delta_range);

double max_abs_error(const SweepResult& oracle_result);

struct VerifyCheck {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;

    double abs_error() const;
    bool passed() const;
};

// Quadrature identities: band integrals against the arctan antiderivative,
// ground population against 1 - e^{-s}, and the cubic-numerator check.
std::vector<VerifyCheck> run_verification();
SweepResult verification_result(std::span<const VerifyCheck> checks);

} // namespace wwent::sweeps
