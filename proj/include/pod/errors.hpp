#pragma once

#include <stdexcept>
#include <string>

namespace pod {

// Dimension mismatch between operands.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inversion of a singular matrix.
struct SingularError : std::domain_error {
    using std::domain_error::domain_error;
};

// Input violates a documented precondition (bad bijection, rank-deficient
// generator, constraint violation, non-finite LLR, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard size limit (enumeration larger than the group,
// ML decoding beyond the codebook guard, ...).
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

// A permutation claimed to be an automorphism changed the dynamic frozen
// matrix.
struct AutomorphismViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed file or configuration input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pod
