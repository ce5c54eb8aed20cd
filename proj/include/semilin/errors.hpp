#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semilin {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector or matrix shapes do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Two twists cannot be composed: the codomain system of the first does not
/// match the domain system of the second.
class TwistMismatchError : public Error {
public:
    using Error::Error;
};

/// A map, matrix or scalar required to be invertible is not (or is too close
/// to singular to invert reliably).
class NotInvertibleError : public Error {
public:
    using Error::Error;
};

/// Gram-Schmidt hit a vector that is (numerically) dependent on its
/// predecessors. `index` is the position of the offending input vector.
class DependentVectorsError : public Error {
public:
    DependentVectorsError(const std::string& what, std::size_t index)
        : Error(what), index(index) {}
    std::size_t index;
};

class ZeroVectorError : public Error {
public:
    using Error::Error;
};

/// An inner-product-space constructor rejected its gram matrix.
class SpaceError : public Error {
public:
    using Error::Error;
};

class NotSelfAdjointError : public Error {
public:
    using Error::Error;
};

class NotNormalError : public Error {
public:
    using Error::Error;
};

/// An iteration failed to reach its tolerance. `residual` records how far it
/// got.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual;
};

/// Two members of a would-be orthogonal family overlap. The indices name the
/// offending pair.
class OrthogonalityError : public Error {
public:
    OrthogonalityError(const std::string& what, std::size_t i, std::size_t j)
        : Error(what), i(i), j(j) {}
    std::size_t i;
    std::size_t j;
};

/// A family expected to span the whole space does not.
class SpanError : public Error {
public:
    using Error::Error;
};

class InvalidFieldError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// Operands were built over different contexts (different fields, different
/// truncation lengths, ...).
class ContextMismatchError : public Error {
public:
    using Error::Error;
};

class ZeroPolynomialError : public Error {
public:
    using Error::Error;
};

/// An operation ran out of tracked precision before producing a meaningful
/// result.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Input document could not be parsed or failed schema validation.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A supposedly unreachable state; indicates a bug in this library.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace semilin
