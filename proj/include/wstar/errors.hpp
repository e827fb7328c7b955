//
// wstar : finite W*-algebra commutator toolkit
// module: errors -- exception hierarchy shared by all operations
//

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wstar {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input dimensions do not match the declared block structure.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Two operands live on different algebra shapes.
struct ShapeMismatch : Error {
    using Error::Error;
};

struct NonFiniteEntry : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

/// An eigensolver or factorization did not converge.
struct NumericalFailure : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

/// The requested center lies outside the per-block median interval.
struct CenterNotInMedianInterval : Error {
    using Error::Error;
};

/// Raised only on internal inconsistency: the rank-balance certificate
/// exists for every self-adjoint element of a finite block algebra, so
/// this firing signals a bug, never bad input.
struct CertificateImpossible : Error {
    using Error::Error;
};

struct BlockTooLarge : Error {
    using Error::Error;
};

struct InvalidNorm : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace wstar
