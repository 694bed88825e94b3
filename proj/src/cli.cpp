#include "wwent/cli.hpp"

#include <fstream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "wwent/errors.hpp"
#include "wwent/serialize.hpp"
#include "wwent/sweep.hpp"

namespace wwent::cli {

namespace {

using sweeps::OutputFormat;

const std::set<std::string> kSubcommands = {"sweep-epsilon", "sweep-delta",   "sweep-time",
                                            "fidelity-grid", "oracle-check", "verify"};

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

OutputFormat resolve_format(const std::string& format, const std::string& path)
{
    if (format == "csv") return OutputFormat::csv;
    if (format == "json") return OutputFormat::json;
    if (format.empty()) return ends_with(path, ".json") ? OutputFormat::json : OutputFormat::csv;
    throw ConfigError("format: expected csv or json, got '" + format + "'");
}

// Splices config-file entries in front of the command-line flags of the
// subcommand, so that flags given on the command line win (TakeLast).
std::vector<std::string> expand_config(const std::vector<std::string>& args)
{
    std::string config_path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty()) return rest;

    std::vector<std::string> injected;
    for (const auto& [key, value] : read_config_file(config_path)) {
        injected.push_back("--" + key);
        injected.push_back(value);
    }
    auto sub = std::find_if(rest.begin(), rest.end(), [](const std::string& a) { return kSubcommands.contains(a); });
    if (sub == rest.end()) return rest;
    rest.insert(sub + 1, injected.begin(), injected.end());
    return rest;
}

struct Options {
    std::string out = "-";
    std::string format;
    std::string delta_list = "0,2,4,8";
    std::string eps_range = "0.01:10:1000";
    std::string eps_list = "0.2,0.5,5,9";
    std::string delta_range = "-10:10:2001";
    std::string time_range = "0:5:501";
    std::string grid_eps = "0:10:101";
    std::string grid_delta = "-10:10:201";
    std::size_t modes = oracle::kDefaultModes;
    double span = oracle::kDefaultSpan;
    std::string spacing = "lorentzian";
    std::string oracle_eps = "0.05:10:20";
    std::string oracle_delta = "-10:10:20";
    std::vector<std::string> specs;
};

void add_output(CLI::App* sub, Options& o)
{
    sub->add_option("--out", o.out, "Output file, '-' for stdout")->capture_default_str();
    sub->add_option("--format", o.format, "csv or json (default: from the --out extension, else csv)");
}

int run_verify(const Options& o, bool write_file, std::ostream& out)
{
    const auto checks = sweeps::run_verification();
    bool all_passed = true;
    for (const auto& c : checks) {
        all_passed = all_passed && c.passed();
        out << (c.passed() ? "PASS " : "FAIL ") << c.name << "  value=" << sweeps::format_number(c.value)
            << "  expected=" << sweeps::format_number(c.expected) << "  abs_error=" << fmt::format("{:.3e}", c.abs_error())
            << "  tol=" << fmt::format("{:.1e}", c.tolerance) << '\n';
    }
    if (write_file) sweeps::write_result(sweeps::verification_result(checks), o.out, resolve_format(o.format, o.out), out);
    return all_passed ? kExitOk : kExitFailure;
}

} // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(fmt::format("config: line {} of '{}' is not key = value", number, path));
        auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(fmt::format("config: line {} of '{}' has an empty key", number, path));
        entries.emplace_back(std::move(key), trim(line.substr(eq + 1)));
    }
    return entries;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Entanglement structure of atomic spontaneous emission (Weisskopf-Wigner)", "wwent"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.add_option("--config", "Flat key = value file; command-line flags override it");

    Options o;

    auto* eps_cmd = app.add_subcommand("sweep-epsilon", "Entanglement vs band half-width (one column per detuning)");
    eps_cmd->add_option("--delta", o.delta_list, "Comma-separated detunings")->capture_default_str();
    eps_cmd->add_option("--eps", o.eps_range, "Band half-width range min:max:steps")->capture_default_str();
    add_output(eps_cmd, o);

    auto* delta_cmd = app.add_subcommand("sweep-delta", "Entanglement vs detuning (one column per band half-width)");
    delta_cmd->add_option("--eps", o.eps_list, "Comma-separated band half-widths")->capture_default_str();
    delta_cmd->add_option("--delta", o.delta_range, "Detuning range min:max:steps")->capture_default_str();
    add_output(delta_cmd, o);

    auto* time_cmd = app.add_subcommand("sweep-time", "Atom-field entanglement vs Gamma t");
    time_cmd->add_option("--range", o.time_range, "Gamma t range min:max:steps")->capture_default_str();
    add_output(time_cmd, o);

    auto* fid_cmd = app.add_subcommand("fidelity-grid", "Vacuum fidelity of band A over (eps, delta)");
    fid_cmd->add_option("--eps", o.grid_eps, "Band half-width range min:max:steps")->capture_default_str();
    fid_cmd->add_option("--delta", o.grid_delta, "Detuning range min:max:steps")->capture_default_str();
    add_output(fid_cmd, o);

    auto* oracle_cmd = app.add_subcommand("oracle-check", "Discrete-mode oracle vs arctan closed form");
    oracle_cmd->add_option("--modes", o.modes, "Number of discrete modes")->capture_default_str();
    oracle_cmd->add_option("--span", o.span, "Half-width of the mode window in units of Gamma")->capture_default_str();
    oracle_cmd->add_option("--spacing", o.spacing, "lorentzian or uniform")->capture_default_str();
    oracle_cmd->add_option("--eps", o.oracle_eps, "Band half-width range min:max:steps")->capture_default_str();
    oracle_cmd->add_option("--delta", o.oracle_delta, "Detuning range min:max:steps")->capture_default_str();
    oracle_cmd->add_option("--spec", o.specs, "Explicit eps,delta pair; repeatable; replaces the ranges")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    add_output(oracle_cmd, o);

    auto* verify_cmd = app.add_subcommand("verify", "Quadrature identity checks; nonzero exit on any failure");
    add_output(verify_cmd, o);

    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }

    std::vector<const char*> argv;
    argv.push_back("wwent");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*eps_cmd) {
            const auto deltas = sweeps::parse_list(o.delta_list, "delta");
            const auto result = sweeps::sweep_epsilon(deltas, sweeps::parse_range(o.eps_range, "eps"));
            sweeps::write_result(result, o.out, resolve_format(o.format, o.out), out);
        } else if (*delta_cmd) {
            const auto eps = sweeps::parse_list(o.eps_list, "eps");
            const auto result = sweeps::sweep_delta(eps, sweeps::parse_range(o.delta_range, "delta"));
            sweeps::write_result(result, o.out, resolve_format(o.format, o.out), out);
        } else if (*time_cmd) {
            const auto result = sweeps::sweep_time(sweeps::parse_range(o.time_range, "range"));
            sweeps::write_result(result, o.out, resolve_format(o.format, o.out), out);
        } else if (*fid_cmd) {
            const auto result = sweeps::grid_fidelity(sweeps::parse_range(o.grid_eps, "eps"),
                                                      sweeps::parse_range(o.grid_delta, "delta"));
            sweeps::write_result(result, o.out, resolve_format(o.format, o.out), out);
        } else if (*oracle_cmd) {
            sweeps::OracleGridParams params;
            params.modes = o.modes;
            params.span = o.span;
            if (o.spacing == "lorentzian")
                params.spacing = oracle::GridSpacing::lorentzian;
            else if (o.spacing == "uniform")
                params.spacing = oracle::GridSpacing::uniform;
            else
                throw ConfigError("spacing: expected lorentzian or uniform, got '" + o.spacing + "'");

            sweeps::SweepResult result;
            if (!o.specs.empty()) {
                std::vector<PartitionSpec> specs;
                for (const auto& s : o.specs) {
                    const auto pair = sweeps::parse_list(s, "spec");
                    if (pair.size() != 2) throw ConfigError("spec: expected eps,delta, got '" + s + "'");
                    specs.push_back({pair[0], pair[1]});
                }
                result = sweeps::oracle_check(params, specs);
            } else {
                result = sweeps::oracle_check(params, sweeps::parse_range(o.oracle_eps, "eps"),
                                              sweeps::parse_range(o.oracle_delta, "delta"));
            }
            sweeps::write_result(result, o.out, resolve_format(o.format, o.out), out);
            err << "max_abs_error: " << *result.find_metadata("max_abs_error") << '\n';
        } else if (*verify_cmd) {
            return run_verify(o, verify_cmd->count("--out") > 0, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace wwent::cli
