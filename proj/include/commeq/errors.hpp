#pragma once

#include <stdexcept>
#include <string>

namespace commeq {

// Base class for every error the library raises on purpose. Callers that
// want to distinguish failure classes catch the concrete types below.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (scalars, polynomials, problem files).
struct ParseError : Error {
    using Error::Error;
};

// Operands with incompatible shapes.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Division by zero or inversion of a singular matrix.
struct SingularError : Error {
    using Error::Error;
};

// A matrix expected to be nilpotent is not.
struct NotNilpotent : Error {
    using Error::Error;
};

// Supplied eigenvalue list does not account for the whole space.
struct IncompleteSpectrum : Error {
    using Error::Error;
};

// The solver needs a non-derogatory matrix but got a derogatory one.
struct DerogatoryInput : Error {
    using Error::Error;
};

// Free parameters violate a family constraint (rejected, not fatal).
struct ConstraintViolation : Error {
    using Error::Error;
};

// An affine pivot vanished during the diagonal recursion; carries the
// equation position so the caller can report which entry failed.
struct PivotFailure : Error {
    int diagonal;
    int row;
    PivotFailure(int diag, int r, const std::string& what)
        : Error(what), diagonal(diag), row(r) {}
};

// eval_f and friends require the argument's spectrum to be the single
// point alpha; raised when X - alpha*I is not nilpotent.
struct SpectrumNotPoint : Error {
    using Error::Error;
};

// Normalization by the linear coefficient is impossible when it is zero.
struct ZeroDerivative : Error {
    using Error::Error;
};

// MultiPoly operation over incompatible variable sets.
struct VariableMismatch : Error {
    using Error::Error;
};

// A checked precondition of an operation does not hold.
struct PreconditionFailed : Error {
    using Error::Error;
};

// Input is valid but outside the solvable scope of the library.
struct Unsupported : Error {
    using Error::Error;
};

} // namespace commeq
