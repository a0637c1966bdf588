#pragma once

#include <stdexcept>
#include <string>

namespace srf {

// Common base so the CLI can map library failures to exit codes in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside a closed-form's domain (A_m <= 0, alpha < 0, ...).
struct DomainError : Error {
    using Error::Error;
};

// Structural misuse: index bounds, cardinality mismatches.
struct SpecError : Error {
    using Error::Error;
};

// Geometrically degenerate configuration (coincident points, zero edges).
struct DegenerateError : Error {
    using Error::Error;
};

// Iteration budget exhausted before reaching the requested tolerance.
struct NonConvergenceError : Error {
    using Error::Error;
};

// Grid scan found no lattice point inside the compact region.
struct EmptyFeasibleSetError : Error {
    using Error::Error;
};

// Independent optimum routes disagree beyond tolerance.
struct CrossCheckError : Error {
    using Error::Error;
};

// Root solve converged onto the degenerate cos(omega) = 1 root.
struct DegenerateRootError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace srf
