#include "wwent/serialize.hpp"

#include <fstream>
#include <iostream>
#include <ostream>

#include <fmt/format.h>
#include "json.hpp"

#include "wwent/errors.hpp"

namespace wwent::sweeps {

std::string format_number(double v)
{
    return fmt::format("{:.16e}", v);
}

void write_csv(const SweepResult& result, std::ostream& out)
{
    for (const auto& [key, value] : result.metadata) out << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < result.header.size(); ++i) out << (i ? "," : "") << result.header[i];
    out << '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

void write_json(const SweepResult& result, std::ostream& out)
{
    // ordered_json keeps metadata in insertion order, which keeps output stable.
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : result.metadata) doc["metadata"][key] = value;
    doc["header"] = result.header;
    doc["rows"] = result.rows;
    out << doc.dump(1) << '\n';
}

SweepResult read_json(std::istream& in)
{
    const auto doc = nlohmann::ordered_json::parse(in);
    SweepResult result;
    for (const auto& [key, value] : doc.at("metadata").items())
        result.metadata.emplace_back(key, value.get<std::string>());
    result.header = doc.at("header").get<std::vector<std::string>>();
    result.rows = doc.at("rows").get<std::vector<std::vector<double>>>();
    return result;
}

void write_result(const SweepResult& result, const std::string& path, OutputFormat format, std::ostream& std_out)
{
    auto emit = [&](std::ostream& os) {
        if (format == OutputFormat::json)
            write_json(result, os);
        else
            write_csv(result, os);
    };
    if (path.empty() || path == "-") {
        emit(std_out);
        std_out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("out: cannot open '" + path + "' for writing");
    emit(file);
    if (!file) throw ConfigError("out: failed writing '" + path + "'");
}

} // namespace wwent::sweeps
