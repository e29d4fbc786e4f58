#pragma once

#include <stdexcept>
#include <string>

namespace planpred {

// Violations of model/domain rules (infeasible observations, exhausted
// generators, degenerate statistics). CLI maps these to exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Ill-formed input files or values (bad JSON, unknown tokens, broken CSV
// rows). CLI maps these to exit code 2, same as usage errors.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace planpred
