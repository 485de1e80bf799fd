#pragma once

#include <stdexcept>
#include <string>

namespace lfe {

/// Parameter outside the mathematical domain of an operation
/// (non-positive variance, kappa < 2, epsilon out of range, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Operation requires an invertible / strictly positive definite input
/// and the argument is singular (e.g. |a| == |b| in the conditional map).
class SingularError : public DomainError {
public:
    explicit SingularError(const std::string& what) : DomainError(what) {}
};

/// Requested the stationary law outside the ergodic regime alpha > |beta|.
class NoStationaryLawError : public DomainError {
public:
    explicit NoStationaryLawError(const std::string& what) : DomainError(what) {}
};

/// Adaptive integration could not meet its tolerance, or the flow left the
/// strictly positive definite cone.
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

/// Explicit scheme rejected: the step size violates the mean-stability
/// bound |1 - dt*g| < 1 for some drift eigenvalue g.
class StabilityError : public DomainError {
public:
    explicit StabilityError(const std::string& what) : DomainError(what) {}
};

} // namespace lfe
