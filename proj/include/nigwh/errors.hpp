#pragma once

#include <stdexcept>
#include <string>

namespace nigwh {

/// Invalid input or a precondition violation (maps to CLI exit code 2).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Hankel matrix numerically singular at the working precision: n is too
/// large for the available coefficient accuracy.
struct SingularSystemError : std::runtime_error {
    explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// An iteration failed to converge at the working precision.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested a gamma-convolution construction for a signed Thorin measure.
struct NotGGCError : DomainError {
    explicit NotGGCError(const std::string& what) : DomainError(what) {}
};

/// A Pade residue violated positivity beyond tolerance (precision exhaustion).
struct NonPositiveResidueError : std::runtime_error {
    explicit NonPositiveResidueError(const std::string& what) : std::runtime_error(what) {}
};

/// A mixture weight violated positivity beyond tolerance (precision exhaustion).
struct NegativeWeightError : std::runtime_error {
    explicit NegativeWeightError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation point fell on the support ray of a spectral measure.
struct BranchError : DomainError {
    explicit BranchError(const std::string& what) : BranchError::DomainError(what) {}
};

/// Integrand returned a non-finite value away from the interval endpoints.
struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation at (or numerically indistinguishable from) a pole.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nigwh
