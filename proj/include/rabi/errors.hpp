// errors.hpp: Exception types shared across the rabi_lab headers

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

// Matrix shape or truncation size out of range.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Caller broke a documented precondition (e.g. non-hermitian input to a hermitian solver).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A projection onto a reference state is too small to be trusted.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation growth hit max_dim before the requested levels settled.
struct ConvergenceFailure : std::runtime_error {
    ConvergenceFailure(const std::string& what, int last_dim_, std::vector<double> residuals_)
        : std::runtime_error(what), last_dim(last_dim_), last_residuals(std::move(residuals_)) {}

    int last_dim{0};
    std::vector<double> last_residuals;
};

} // namespace rabi
