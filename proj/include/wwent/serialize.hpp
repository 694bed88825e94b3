#pragma once

#include <iostream>
#include <string>

#include "wwent/sweep.hpp"

namespace wwent::sweeps {

// Every numeric field is written as {:.16e}: 17 significant digits, so the
// text round-trips to the same double and identical results give identical
// bytes.
std::string format_number(double v);

// '#'-prefixed "key: value" metadata lines, then the header row, then rows;
// comma separated, '.' decimal point.
void write_csv(const SweepResult& result, std::ostream& out);

// {"metadata": {...}, "header": [...], "rows": [[...], ...]}
void write_json(const SweepResult& result, std::ostream& out);
SweepResult read_json(std::istream& in);

// Writes to `path` in the given format; "-" writes to std_out.
void write_result(const SweepResult& result, const std::string& path, OutputFormat format,
                  std::ostream& std_out = std::cout);

} // namespace wwent::sweeps
