#pragma once

#include <stdexcept>
#include <string>

namespace wwent {

// Input outside the mathematical domain of an operation (negative width,
// negative time, NaN, infinity).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller broke a structural precondition (length mismatch, non-Hermitian input).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dense storage or resource guard exceeded.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Adaptive integration could not reach the requested tolerance within budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid sweep configuration (bad range, unknown key, malformed value).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace wwent
