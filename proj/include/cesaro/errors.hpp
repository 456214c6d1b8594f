#pragma once

#include <stdexcept>
#include <string>

namespace cesaro {

/// Argument outside the mathematical domain of an operation (|z| >= 1, x <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed user configuration: bad node counts, unparsable measure or function specs.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative method hit its cap. Carries the last estimate it had.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

} // namespace cesaro
