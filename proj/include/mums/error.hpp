#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mums {

// Bad input: malformed documents, schema violations, failed validation.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A well-formed model the solver could not handle (no admissible root,
// singular systems, residual checks that failed). Carries diagnostics.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what, std::vector<std::string> diagnostics = {})
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

// Function evaluated outside its domain (singular M(x), beta*q >= 1, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace mums
