#pragma once

#include <stdexcept>
#include <string>

namespace bcur {

/// Base class for all library errors so callers can catch bcur failures in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The underlying eigen/SVD solver did not converge (numerically pathological input).
struct IterationFailure : Error {
    using Error::Error;
};

/// A matrix expected to have orthonormal columns does not (Gram deviates from I).
struct InvalidBasis : Error {
    using Error::Error;
};

/// A block carries no mass in the relevant subspace, making its stable rank 0/0.
struct ZeroBlock : Error {
    using Error::Error;
};

/// An operation that needs a nonzero matrix received an all-zero one.
struct ZeroMatrix : Error {
    using Error::Error;
};

/// Probabilities are negative, non-finite, or do not sum to one.
struct DistributionInvalid : Error {
    using Error::Error;
};

/// Without-replacement sampling asked for more blocks than have positive probability.
struct NotEnoughBlocks : Error {
    using Error::Error;
};

/// The sampled row matrix R is identically zero; leverage probabilities are undefined.
struct DegenerateR : Error {
    using Error::Error;
};

/// Shapes of the operands do not line up.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A matrix file (CSV or binary) could not be parsed; the message names the
/// offending line or offset.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace bcur
