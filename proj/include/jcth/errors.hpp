// errors.hpp — Exception types thrown by the jcth library

#pragma once

#include <stdexcept>
#include <string>

namespace jcth {

// Requested operator would exceed the configured dimension cap.
struct DimensionLimitError : std::length_error {
    using std::length_error::length_error;
};

// Input fails an operation's precondition (non-Hermitian, bad algebra, ...).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Scalar parameter outside its admissible range.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation requested in a coupling regime where it is not defined
// (e.g. positive metric with beta <= 0).
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

// Matrix dimensions do not match.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Hermitian-sqrt input has a non-positive eigenvalue.
struct PositivityError : std::domain_error {
    PositivityError(const std::string& what, double eigenvalue)
        : std::domain_error(what), offending_eigenvalue(eigenvalue) {}
    double offending_eigenvalue;
};

// Unknown or inconsistent model/check combination.
struct CatalogError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Extended supercharges do not share a common Hamiltonian.
struct AlgebraMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Matrix is not block diagonal with respect to the given conserved quantity.
struct NotBlockDiagonalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix appears defective (non-diagonalizable) within tolerance.
struct DefectiveMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested level beyond a family's bound-state count.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Bad run configuration; carries the offending field path.
struct ConfigError : std::invalid_argument {
    ConfigError(const std::string& what, std::string field)
        : std::invalid_argument(what + " (field: " + field + ")"), field_path(std::move(field)) {}
    std::string field_path;
};

}  // namespace jcth
