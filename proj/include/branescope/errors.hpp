#pragma once

#include <stdexcept>
#include <string>

namespace branescope {

// Domain errors: a precondition on the mathematical input failed.  The CLI
// maps these to exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegeneratePolytope : DomainError {
    using DomainError::DomainError;
};
struct NonReflexive : DomainError {
    using DomainError::DomainError;
};
struct NonSimplicialFan : DomainError {
    using DomainError::DomainError;
};
struct NotCartier : DomainError {
    using DomainError::DomainError;
};
struct NotInTorus : DomainError {
    using DomainError::DomainError;
};
struct NotASubcomplex : DomainError {
    using DomainError::DomainError;
};

// Compute errors: the input was admissible but a randomized or numeric
// procedure failed to certify its result.  The CLI maps these to exit code 3.
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenericityFailure : ComputeError {
    using ComputeError::ComputeError;
};
struct NumericalInstability : ComputeError {
    using ComputeError::ComputeError;
};
struct ScanExhausted : ComputeError {
    using ComputeError::ComputeError;
};

} // namespace branescope
