#pragma once

#include <stdexcept>
#include <string>

namespace cmldde {

/// Bad input: out-of-range parameters, malformed requests.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation was called on parameters that do not satisfy its precondition
/// (for example, asking for B1 when no positive equilibrium exists).
class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The Hopf condition has no solution for the given parameters.
class NoHopf : public DomainError {
public:
    using DomainError::DomainError;
};

/// A root search found no sign change / no root.
class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integration or quadrature broke down (NaN, positivity violation, conditioning).
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time_(last_valid_time) {}

    double last_valid_time() const noexcept { return last_valid_time_; }

private:
    double last_valid_time_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cmldde
