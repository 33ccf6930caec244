#pragma once

#include <stdexcept>
#include <string>

namespace mgesc {

// Argument outside an operation's physical domain (e.g. r <= 0 at a 1/r singularity).
using domain_error = std::domain_error;

// Malformed or unsupported argument value (truncation order, grid shape, ...).
using argument_error = std::invalid_argument;

// Requested state has no closed-form result; the quadrature route covers it.
struct unsupported_state_error : argument_error {
    using argument_error::argument_error;
};

// Quadrature self-check (node-count doubling) exceeded the requested tolerance.
struct accuracy_error : std::runtime_error {
    using runtime_error::runtime_error;
};

// Evaluation point too close to a wavefunction node; the W quotient is indeterminate there.
struct singular_point_error : std::runtime_error {
    using runtime_error::runtime_error;
};

// Node-count bracketing found no state with the requested node count below E = 0.
struct no_bound_state_error : std::runtime_error {
    using runtime_error::runtime_error;
};

// Bisection failed to reach the energy tolerance within the iteration cap.
struct iteration_error : std::runtime_error {
    using runtime_error::runtime_error;
};

// Non-finite value encountered during numerical integration.
struct numerical_failure_error : std::runtime_error {
    using runtime_error::runtime_error;
};

} // namespace mgesc
