#include "wwent/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "wwent/errors.hpp"
#include "wwent/quadrature.hpp"

namespace wwent::sweeps {

namespace {

std::string number_label(double v)
{
    return fmt::format("{}", v);
}

std::string timestamp()
{
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    if (epoch == nullptr || *epoch == '\0') return "unset";
    long long seconds = 0;
    const auto* end = epoch + std::char_traits<char>::length(epoch);
    if (auto [ptr, ec] = std::from_chars(epoch, end, seconds); ec != std::errc{} || ptr != end) return "unset";
    const std::time_t t = static_cast<std::time_t>(seconds);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::vector<std::pair<std::string, std::string>> base_metadata(SweepKind kind)
{
    return {
        {"tool_version", std::string(kToolVersion)},
        {"sweep_kind", std::string(to_string(kind))},
        {"timestamp", timestamp()},
    };
}

std::string join(std::span<const double> values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += number_label(values[i]);
    }
    return out;
}

double parse_double(std::string_view text, std::string_view name)
{
    // from_chars rejects a leading '+', which is harmless to accept
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw ConfigError(fmt::format("{}: '{}' is not a number", name, text));
    if (!std::isfinite(v))
        throw ConfigError(fmt::format("{}: value must be finite", name));
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

} // namespace

std::string_view to_string(SweepKind kind)
{
    switch (kind) {
    case SweepKind::epsilon: return "epsilon";
    case SweepKind::delta: return "delta";
    case SweepKind::time: return "time";
    case SweepKind::fidelity_grid: return "fidelity_grid";
    case SweepKind::oracle_check: return "oracle_check";
    case SweepKind::verify: return "verify";
    }
    return "unknown";
}

std::vector<double> Range::values() const
{
    std::vector<double> out(steps);
    const double denom = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double left = static_cast<double>(steps - 1 - i);
        const double right = static_cast<double>(i);
        out[i] = (left * min + right * max) / denom;
    }
    return out;
}

void Range::validate(std::string_view name) const
{
    if (!std::isfinite(min) || !std::isfinite(max))
        throw ConfigError(fmt::format("{}: range bounds must be finite", name));
    if (!(min < max))
        throw ConfigError(fmt::format("{}: range needs min < max", name));
    if (steps < 2)
        throw ConfigError(fmt::format("{}: range needs at least 2 steps", name));
}

std::string Range::to_string() const
{
    return fmt::format("{}:{}:{}", number_label(min), number_label(max), steps);
}

Range parse_range(std::string_view text, std::string_view name)
{
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw ConfigError(fmt::format("{}: expected min:max:steps, got '{}'", name, text));

    Range r;
    r.min = parse_double(trim(text.substr(0, first)), name);
    r.max = parse_double(trim(text.substr(first + 1, second - first - 1)), name);
    const auto steps_text = trim(text.substr(second + 1));
    std::size_t steps = 0;
    auto [ptr, ec] = std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), steps);
    if (steps_text.empty() || ec != std::errc{} || ptr != steps_text.data() + steps_text.size())
        throw ConfigError(fmt::format("{}: steps '{}' is not a positive integer", name, steps_text));
    r.steps = steps;
    r.validate(name);
    return r;
}

std::vector<double> parse_list(std::string_view text, std::string_view name)
{
    std::vector<double> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(parse_double(trim(text.substr(start, comma - start)), name));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

const std::string* SweepResult::find_metadata(std::string_view key) const
{
    for (const auto& [k, v] : metadata)
        if (k == key) return &v;
    return nullptr;
}

std::size_t worker_count()
{
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WW_THREADS"); env != nullptr && *env != '\0') {
        std::size_t cap = 0;
        const auto* end = env + std::char_traits<char>::length(env);
        if (auto [ptr, ec] = std::from_chars(env, end, cap); ec == std::errc{} && ptr == end && cap > 0) n = cap;
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

SweepResult sweep_epsilon(std::span<const double> delta_values, const Range& eps_range)
{
    eps_range.validate("eps");
    if (delta_values.empty()) throw ConfigError("delta: at least one value is required");
    for (double d : delta_values)
        if (!std::isfinite(d)) throw ConfigError("delta: values must be finite");
    if (eps_range.min < 0.0) throw DomainError("eps: eps_tilde must be nonnegative");

    SweepResult out;
    out.header.emplace_back("eps_tilde");
    for (double d : delta_values) out.header.push_back("S(delta=" + number_label(d) + ")");
    out.metadata = base_metadata(SweepKind::epsilon);
    out.metadata.emplace_back("delta_values", join(delta_values));
    out.metadata.emplace_back("eps_range", eps_range.to_string());

    const auto eps = eps_range.values();
    out.rows.resize(eps.size());
    parallel_for(eps.size(), [&](std::size_t i) {
        auto& row = out.rows[i];
        row.reserve(delta_values.size() + 1);
        row.push_back(eps[i]);
        for (double d : delta_values) row.push_back(partition_entanglement({eps[i], d}));
    });
    return out;
}

SweepResult sweep_delta(std::span<const double> eps_values, const Range& delta_range)
{
    delta_range.validate("delta");
    if (eps_values.empty()) throw ConfigError("eps: at least one value is required");
    for (double e : eps_values) {
        if (!std::isfinite(e)) throw ConfigError("eps: values must be finite");
        if (e < 0.0) throw DomainError("eps: eps_tilde must be nonnegative");
    }

    SweepResult out;
    out.header.emplace_back("delta_tilde");
    for (double e : eps_values) out.header.push_back("S(eps=" + number_label(e) + ")");
    out.metadata = base_metadata(SweepKind::delta);
    out.metadata.emplace_back("eps_values", join(eps_values));
    out.metadata.emplace_back("delta_range", delta_range.to_string());

    const auto delta = delta_range.values();
    out.rows.resize(delta.size());
    parallel_for(delta.size(), [&](std::size_t i) {
        auto& row = out.rows[i];
        row.reserve(eps_values.size() + 1);
        row.push_back(delta[i]);
        for (double e : eps_values) row.push_back(partition_entanglement({e, delta[i]}));
    });
    return out;
}

SweepResult sweep_time(const Range& time_range)
{
    time_range.validate("range");
    if (time_range.min < 0.0) throw DomainError("range: gamma_t must be nonnegative (negative time)");

    SweepResult out;
    out.header = {"gamma_t", "excited_population", "atom_field_entropy"};
    out.metadata = base_metadata(SweepKind::time);
    out.metadata.emplace_back("time_range", time_range.to_string());

    const auto times = time_range.values();
    out.rows.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const auto snap = atom_population(times[i]);
        out.rows[i] = {snap.gamma_t, snap.excited_population, snap.atom_field_entropy};
    });
    return out;
}

SweepResult grid_fidelity(const Range& eps_range, const Range& delta_range)
{
    eps_range.validate("eps");
    delta_range.validate("delta");
    if (eps_range.min < 0.0) throw DomainError("eps: eps_tilde must be nonnegative");

    SweepResult out;
    out.header = {"eps_tilde", "delta_tilde", "fidelity"};
    out.metadata = base_metadata(SweepKind::fidelity_grid);
    out.metadata.emplace_back("eps_range", eps_range.to_string());
    out.metadata.emplace_back("delta_range", delta_range.to_string());

    const auto eps = eps_range.values();
    const auto delta = delta_range.values();
    out.rows.resize(eps.size() * delta.size());
    parallel_for(out.rows.size(), [&](std::size_t k) {
        const double e = eps[k / delta.size()];
        const double d = delta[k % delta.size()];
        out.rows[k] = {e, d, vacuum_fidelity({e, d})};
    });
    return out;
}

SweepResult oracle_check(const OracleGridParams& params, std::span<const PartitionSpec> specs)
{
    if (params.modes < kMinOracleModes)
        throw DomainError(fmt::format("modes: at least {} modes are needed for a meaningful comparison", kMinOracleModes));
    if (params.modes > kMaxOracleModes)
        throw SizeError(fmt::format("modes: {} exceeds the resource guard of {}", params.modes, kMaxOracleModes));
    if (specs.empty()) throw ConfigError("oracle-check: no partition specs given");
    for (const auto& s : specs) static_cast<void>(partition_weights(s));

    const auto grid = oracle::build_mode_grid(params.modes, params.span, 0.0, params.spacing);

    SweepResult out;
    out.header = {"eps_tilde", "delta_tilde", "lambda_a_closed", "lambda_a_discrete", "abs_error"};
    out.metadata = base_metadata(SweepKind::oracle_check);
    out.metadata.emplace_back("modes", std::to_string(params.modes));
    out.metadata.emplace_back("span", number_label(params.span));
    out.metadata.emplace_back("spacing", params.spacing == oracle::GridSpacing::uniform ? "uniform" : "lorentzian");
    out.metadata.emplace_back("tail_mass", fmt::format("{:.16e}", grid.tail_mass));

    out.rows.resize(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) {
        const auto& s = specs[i];
        const double closed = partition_weights(s).lambda_a();
        const double discrete = oracle::reduced_weights(grid, oracle::assign_partition(grid, s)).lambda_a();
        out.rows[i] = {s.eps_tilde, s.delta_tilde, closed, discrete, std::fabs(closed - discrete)};
    });

    double worst = 0.0;
    for (const auto& row : out.rows) worst = std::max(worst, row[4]);
    out.metadata.emplace_back("max_abs_error", fmt::format("{:.16e}", worst));
    return out;
}

SweepResult oracle_check(const OracleGridParams& params, const Range& eps_range, const Range& delta_range)
{
    eps_range.validate("eps");
    delta_range.validate("delta");
    std::vector<PartitionSpec> specs;
    for (double e : eps_range.values())
        for (double d : delta_range.values()) specs.push_back({e, d});
    auto out = oracle_check(params, specs);
    out.metadata.emplace_back("eps_range", eps_range.to_string());
    out.metadata.emplace_back("delta_range", delta_range.to_string());
    return out;
}

double max_abs_error(const SweepResult& oracle_result)
{
    double worst = 0.0;
    for (const auto& row : oracle_result.rows)
        if (!row.empty()) worst = std::max(worst, row.back());
    return worst;
}

double VerifyCheck::abs_error() const
{
    return std::fabs(value - expected);
}

bool VerifyCheck::passed() const
{
    return std::isfinite(value) && abs_error() <= tolerance;
}

std::vector<VerifyCheck> run_verification()
{
    using std::numbers::pi;
    std::vector<VerifyCheck> checks;

    constexpr double band_tol = 1e-10;
    auto band = [&](double a, double b) {
        const auto r = quadrature::lorentzian_band_integral(a, b, band_tol);
        checks.push_back({fmt::format("lorentzian_band[{},{}]", number_label(a), number_label(b)), r.value,
                          2.0 * (std::atan(2.0 * b) - std::atan(2.0 * a)), band_tol});
    };
    band(-INFINITY, INFINITY);
    band(-0.5, 0.5);
    band(0.3, 7.1);
    band(-3.0, INFINITY);
    band(-INFINITY, -12.5);
    band(-1000.0, 1000.0);

    constexpr double rho_tol = 1e-8;
    for (double s : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
        const auto r = quadrature::rho_bb_integral(s, rho_tol);
        checks.push_back({fmt::format("rho_bb[gamma_t={}]", number_label(s)), r.value, -std::expm1(-s), rho_tol});
    }

    // Cubic numerator against its antiderivative:
    //   (1 + x/w)^3 / (x^2 + 1/4) integrates to
    //   2 atan(2x) + (3/w) ln(x^2+1/4)/2 + (3/w^2)(x - atan(2x)/2) + (1/w^3)(x^2/2 - ln(x^2+1/4)/8).
    auto cubic_closed = [](double eps, double delta, double cutoff, double w) {
        auto prim = [w](long double x) {
            const long double l = std::log(x * x + 0.25L);
            return 2.0L * std::atan(2.0L * x) + 3.0L / w * l / 2.0L + 3.0L / (w * w) * (x - std::atan(2.0L * x) / 2.0L)
                 + 1.0L / (w * w * w) * (x * x / 2.0L - l / 8.0L);
        };
        auto flat = [](long double x) { return 2.0L * std::atan(2.0L * x); };
        const long double band_c = prim(delta + eps) - prim(delta - eps);
        const long double norm_c = prim(cutoff) - prim(-w);
        const long double band_f = flat(delta + eps) - flat(delta - eps);
        const long double norm_f = flat(cutoff) - flat(-w);
        return static_cast<double>((band_c / norm_c) / (band_f / norm_f) - 1.0L);
    };
    for (double w : {1e4, 1e6}) {
        const double value = quadrature::cubic_weight_band_error(0.5, 0.0, 1e3, w, 1e-12);
        checks.push_back({fmt::format("cubic_weight[eps=0.5,delta=0,cutoff=1000,omega={}]", number_label(w)), value,
                          cubic_closed(0.5, 0.0, 1e3, w), 1e-9});
    }
    const double optical = quadrature::cubic_weight_band_error(0.5, 0.0, quadrature::kDefaultCutoff,
                                                               quadrature::kDefaultOmegaTilde, 1e-12);
    checks.push_back({"cubic_weight_optical_below_1e-6", optical, 0.0, 1e-6});
    return checks;
}

SweepResult verification_result(std::span<const VerifyCheck> checks)
{
    SweepResult out;
    out.header = {"check", "value", "expected", "abs_error", "tolerance", "passed"};
    out.metadata = base_metadata(SweepKind::verify);
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        out.metadata.emplace_back(fmt::format("check_{}", i), c.name);
        out.rows.push_back({static_cast<double>(i), c.value, c.expected, c.abs_error(), c.tolerance,
                            c.passed() ? 1.0 : 0.0});
    }
    return out;
}

} // namespace wwent::sweeps
