#pragma once

#include <stdexcept>
#include <string>

namespace oposhg {

/// Invalid or inconsistent configuration input.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation evaluated outside its physical domain (wrong branch, unstable
/// working point, pump out of range).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver failed to converge; carries the best residual reached.
struct SolverError : std::runtime_error {
    SolverError(const std::string& what, double best_residual_)
        : std::runtime_error(what), best_residual(best_residual_) {}
    double best_residual = 0.0;
};

/// Numerical-consistency failure (ill-conditioned matrix, imaginary residue
/// above tolerance).
struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oposhg
