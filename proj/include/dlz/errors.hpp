// errors.hpp - exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace dlz {

// Bad parameter or configuration value. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a function (e.g. negative frequency).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The ODE integrator could not make progress. Maps to CLI exit code 2.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

// File could not be read or written. Maps to CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dlz
