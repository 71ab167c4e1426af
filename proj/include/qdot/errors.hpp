// Exception hierarchy shared by every qdot module.
#pragma once

#include <stdexcept>
#include <string>

namespace qdot {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A series or quadrature failed to converge; the message carries diagnostics.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double partial, int terms)
        : Error(what), partial_(partial), terms_(terms) {}
    explicit EvaluationError(const std::string& what) : Error(what) {}

    double partial_sum() const noexcept { return partial_; }
    int terms_used() const noexcept { return terms_; }

private:
    double partial_ = 0.0;
    int terms_ = 0;
};

/// A basis-function denominator vanished at this energy.
class PoleError : public Error {
public:
    PoleError(const std::string& what, double eps) : Error(what), eps_(eps) {}
    double eps() const noexcept { return eps_; }

private:
    double eps_;
};

/// Energy at or above the bound-state threshold v*.
class BoundStateError : public Error {
public:
    using Error::Error;
};

/// Conjugate-pair combinations left a non-negligible imaginary residue.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Adaptive ODE step size collapsed.
class StiffnessError : public Error {
public:
    using Error::Error;
};

}  // namespace qdot
